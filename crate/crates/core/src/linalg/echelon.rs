//! Sparse reduced row echelon form and the subspace presentations built on it.

use super::field::Field;
use crate::error::ArithmeticError;

/// Sparse vector: strictly increasing column indices with nonzero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// `a + c * b` for sparse rows.
pub fn axpy<K: Field>(field: &K, a: &[(usize, K::Elem)], c: &K::Elem, b: &[(usize, K::Elem)]) -> SparseRow<K::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = field.mul(c, &b[j].1);
            if !field.is_zero(&v) {
                out.push((cb, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(c, &b[j].1));
            if !field.is_zero(&v) {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_from_dense<K: Field>(field: &K, dense: &[K::Elem]) -> SparseRow<K::Elem> {
    dense.iter().enumerate().filter(|(_, v)| !field.is_zero(v)).map(|(i, v)| (i, v.clone())).collect()
}

pub fn dense_from_sparse<K: Field>(field: &K, len: usize, sparse: &[(usize, K::Elem)]) -> Vec<K::Elem> {
    let mut out = vec![field.zero(); len];
    for (c, v) in sparse {
        out[*c] = v.clone();
    }
    out
}

fn lookup<E>(row: &[(usize, E)], col: usize) -> Option<&E> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| &row[i].1)
}

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row has a leading one at its pivot column and zeros at the
/// pivot columns of all other rows.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    field: K,
    ncols: usize,
    rows: Vec<SparseRow<K::Elem>>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl<K: Field> Echelon<K> {
    pub fn new(field: K, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new(), row_of_pivot: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Subtract from `row` its components along the stored pivots.
    pub fn reduce(&self, row: &[(usize, K::Elem)]) -> SparseRow<K::Elem> {
        let hits: Vec<(usize, K::Elem)> =
            row.iter().filter_map(|(c, v)| self.row_of_pivot[*c].map(|r| (r, self.field.neg(v)))).collect();
        let mut out = row.to_vec();
        for (r, coeff) in hits {
            out = axpy(&self.field, &out, &coeff, &self.rows[r]);
        }
        out
    }

    /// Insert a row; returns whether it enlarged the row space.
    pub fn insert(&mut self, row: SparseRow<K::Elem>) -> Result<bool, ArithmeticError> {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        let reduced = self.reduce(&row);
        let Some((lead, lead_val)) = reduced.first().cloned() else {
            return Ok(false);
        };
        let scale = self.field.inv(&lead_val)?;
        let new_row: SparseRow<K::Elem> = reduced.into_iter().map(|(c, v)| (c, self.field.mul(&scale, &v))).collect();
        for existing in self.rows.iter_mut() {
            if let Some(v) = lookup(existing, lead) {
                let coeff = self.field.neg(v);
                *existing = axpy(&self.field, existing, &coeff, &new_row);
            }
        }
        self.row_of_pivot[lead] = Some(self.rows.len());
        self.pivots.push(lead);
        self.rows.push(new_row);
        Ok(true)
    }

    /// Rows sorted by pivot column: the canonical RREF.
    pub fn into_basis(self) -> SubspaceBasis<K> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows = self.rows;
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        let sorted: Vec<SparseRow<K::Elem>> = order.iter().map(|&i| std::mem::take(&mut rows[i])).collect();
        SubspaceBasis { field: self.field, ambient: self.ncols, rows: sorted, pivots }
    }
}

/// A subspace of `K^ambient` presented by its reduced row echelon basis.
///
/// Two subspaces are equal exactly when their presentations are equal.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis<K: Field> {
    field: K,
    ambient: usize,
    rows: Vec<SparseRow<K::Elem>>,
    pivots: Vec<usize>,
}

impl<K: Field> SubspaceBasis<K> {
    pub fn zero(field: K, ambient: usize) -> Self {
        SubspaceBasis { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Span of the given sparse vectors.
    pub fn span<I>(field: K, ambient: usize, vectors: I) -> Result<Self, ArithmeticError>
    where
        I: IntoIterator<Item = SparseRow<K::Elem>>,
    {
        let mut ech = Echelon::new(field, ambient);
        for v in vectors {
            ech.insert(v)?;
        }
        Ok(ech.into_basis())
    }

    pub fn span_dense<'a, I>(field: K, ambient: usize, vectors: I) -> Result<Self, ArithmeticError>
    where
        I: IntoIterator<Item = &'a Vec<K::Elem>>,
        K::Elem: 'a,
    {
        let f = field.clone();
        Self::span(field, ambient, vectors.into_iter().map(|v| sparse_from_dense(&f, v)))
    }

    /// Null space of the linear map whose matrix has the given sparse rows.
    pub fn kernel_of_rows<I>(field: K, ncols: usize, rows: I) -> Result<Self, ArithmeticError>
    where
        I: IntoIterator<Item = SparseRow<K::Elem>>,
    {
        let image = Self::span(field.clone(), ncols, rows)?;
        image.annihilator()
    }

    /// The solution space of `{ v : <row, v> = 0 for every basis row }`.
    pub fn annihilator(&self) -> Result<Self, ArithmeticError> {
        let f = &self.field;
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut by_col: Vec<Vec<(usize, K::Elem)>> = vec![Vec::new(); self.ambient];
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                if !is_pivot[*c] {
                    by_col[*c].push((self.pivots[i], f.neg(v)));
                }
            }
        }
        let vectors = (0..self.ambient).filter(|c| !is_pivot[*c]).map(|free| {
            let mut v = std::mem::take(&mut by_col[free]);
            v.push((free, f.one()));
            v.sort_by_key(|e| e.0);
            v
        });
        let vectors: Vec<_> = vectors.collect();
        Self::span(f.clone(), self.ambient, vectors)
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseRow<K::Elem>] {
        &self.rows
    }

    pub fn vector(&self, i: usize) -> Vec<K::Elem> {
        dense_from_sparse(&self.field, self.ambient, &self.rows[i])
    }

    pub fn vectors(&self) -> Vec<Vec<K::Elem>> {
        (0..self.dim()).map(|i| self.vector(i)).collect()
    }

    /// Residual of `v` after removing its components along the basis; it vanishes
    /// at every pivot column.
    pub fn residual(&self, v: &[(usize, K::Elem)]) -> SparseRow<K::Elem> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if let Some(c) = lookup(&out, p).cloned() {
                out = axpy(&self.field, &out, &self.field.neg(&c), &self.rows[i]);
            }
        }
        out
    }

    /// Coordinates of `v` in this basis, or `None` when `v` is not in the span.
    pub fn coordinates_sparse(&self, v: &[(usize, K::Elem)]) -> Option<Vec<K::Elem>> {
        let coords: Vec<K::Elem> =
            self.pivots.iter().map(|&p| lookup(v, p).cloned().unwrap_or_else(|| self.field.zero())).collect();
        let mut rest = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if !self.field.is_zero(c) {
                rest = axpy(&self.field, &rest, &self.field.neg(c), &self.rows[i]);
            }
        }
        rest.is_empty().then_some(coords)
    }

    pub fn coordinates(&self, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
        self.coordinates_sparse(&sparse_from_dense(&self.field, v))
    }

    pub fn contains(&self, v: &[K::Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.coordinates_sparse(r).is_some())
    }

    /// Non-pivot columns; their unit vectors give a complement of the subspace.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|c| !is_pivot[*c]).collect()
    }

    /// Linear combination `sum_i coeffs[i] * basis_i` as a dense vector.
    pub fn combine(&self, coeffs: &[K::Elem]) -> Vec<K::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (row, c) in self.rows.iter().zip(coeffs) {
            if f.is_zero(c) {
                continue;
            }
            for (col, v) in row {
                out[*col] = f.add(&out[*col], &f.mul(c, v));
            }
        }
        out
    }
}
