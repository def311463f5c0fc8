use std::fmt;

use super::echelon::{sparse_from_dense, Echelon, SparseRow, SubspaceBasis};
use super::field::{Field, Rational, Rationals, Q};
use crate::error::{ArithmeticError, Error, Result};

/// Dense matrix over a field, row-major. Zero rows or columns are allowed.
#[derive(Clone, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.render(x)).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<K: Field> Matrix<K> {
    pub fn new(field: K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn scalar(field: K, n: usize, c: &K::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn from_fn(field: K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Build from nested rows; `cols` is needed to describe `n x 0` shapes.
    pub fn from_rows(field: K, rows: Vec<Vec<K::Elem>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &K::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: K::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[K::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[K::Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<K::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_rows(&self) -> Vec<SparseRow<K::Elem>> {
        (0..self.rows).map(|i| sparse_from_dense(&self.field, self.row(i))).collect()
    }

    pub fn map(&self, f: impl Fn(&K::Elem) -> K::Elem) -> Self {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &K::Elem) -> Self {
        self.map(|x| self.field.mul(c, x))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| self.field.neg(x))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&K::Elem, &K::Elem) -> K::Elem) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::Dimension(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[K::Elem]) -> Result<Vec<K::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !f.is_zero(a) && !f.is_zero(b))
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// The dual map in dual bases.
    pub fn dual(&self) -> Self {
        self.transpose()
    }

    /// Kronecker product; the basis of `V ⊗ W` is `v_i ⊗ w_j` at index `i * dim W + j`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let (r2, c2) = other.shape();
        let mut out = Self::zeros(f.clone(), self.rows * r2, self.cols * c2);
        let oc = out.cols;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if !f.is_zero(b) {
                            out.data[(i * r2 + k) * oc + j * c2 + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(field: K, blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!("hstack of {} and {} rows", self.rows, other.rows)));
        }
        Ok(Self::from_fn(self.field.clone(), self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!("vstack of {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.field.clone(), rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn row_space(&self) -> Result<SubspaceBasis<K>, ArithmeticError> {
        SubspaceBasis::span(self.field.clone(), self.cols, self.sparse_rows())
    }

    pub fn rank(&self) -> Result<usize, ArithmeticError> {
        let mut ech = Echelon::new(self.field.clone(), self.cols);
        for r in self.sparse_rows() {
            ech.insert(r)?;
        }
        Ok(ech.rank())
    }

    /// Basis of `{ v : M v = 0 }` in reduced row echelon form.
    pub fn kernel(&self) -> Result<SubspaceBasis<K>, ArithmeticError> {
        SubspaceBasis::kernel_of_rows(self.field.clone(), self.cols, self.sparse_rows())
    }

    /// Column space, as a subspace of `K^rows`.
    pub fn image(&self) -> Result<SubspaceBasis<K>, ArithmeticError> {
        self.transpose().row_space()
    }

    /// A solution of `M x = b` with free variables set to zero, or `None`.
    pub fn solve(&self, b: &[K::Elem]) -> Result<Option<Vec<K::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), self.rows)));
        }
        let n = self.cols;
        let mut ech = Echelon::new(self.field.clone(), n + 1);
        for i in 0..self.rows {
            let mut r = sparse_from_dense(&self.field, self.row(i));
            if !self.field.is_zero(&b[i]) {
                r.push((n, b[i].clone()));
            }
            ech.insert(r)?;
        }
        let basis = ech.into_basis();
        if basis.pivots().last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); n];
        for (row, &p) in basis.rows().iter().zip(basis.pivots()) {
            if let Some((c, v)) = row.last() {
                if *c == n {
                    x[p] = v.clone();
                }
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("inverse of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut ech = Echelon::new(self.field.clone(), 2 * n);
        for i in 0..n {
            let mut r = sparse_from_dense(&self.field, self.row(i));
            r.push((n + i, self.field.one()));
            ech.insert(r)?;
        }
        let basis = ech.into_basis();
        if basis.pivots().iter().enumerate().any(|(i, &p)| i != p) || basis.dim() < n {
            return Ok(None);
        }
        let mut inv = Self::zeros(self.field.clone(), n, n);
        for (i, row) in basis.rows().iter().enumerate() {
            for (c, v) in row {
                if *c >= n {
                    inv.set(i, c - n, v.clone());
                }
            }
        }
        Ok(Some(inv))
    }

    pub fn inverse_or_err(&self, what: &str) -> Result<Self> {
        self.inverse()?.ok_or_else(|| Error::precondition(format!("{what} is not invertible")))
    }

    pub fn det(&self) -> Result<K::Elem> {
        if !self.is_square() {
            return Err(Error::Dimension(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(&a[r][c])) else {
                return Ok(f.zero());
            };
            if p != c {
                a.swap(p, c);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[c][c]);
            let pinv = f.inv(&a[c][c])?;
            for r in c + 1..n {
                if f.is_zero(&a[r][c]) {
                    continue;
                }
                let factor = f.mul(&a[r][c], &pinv);
                for k in c..n {
                    let t = f.mul(&factor, &a[c][k]);
                    a[r][k] = f.sub(&a[r][k], &t);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(self.is_square() && self.rank()? == self.rows)
    }

    /// Entrywise image under a field embedding.
    pub fn lift<L: Field>(&self, target: &L, embed: impl Fn(&K::Elem) -> L::Elem) -> Matrix<L> {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(embed).collect() }
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| self.field.render(x)).collect()).collect()
    }
}

impl Matrix<Rationals> {
    /// Rational matrix from integer rows; convenient in tests and fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| Rational::from_integer(x.into()))).collect();
        Matrix { field: Q, rows: rows.len(), cols, data }
    }

    pub fn to_field<L: Field>(&self, target: &L) -> Matrix<L> {
        self.lift(target, |q| target.from_rational(q))
    }
}

/// The permutation matrix of `V ⊗ W → W ⊗ V`, `v ⊗ w ↦ w ⊗ v`.
pub fn swap_matrix<K: Field>(field: &K, dim_v: usize, dim_w: usize) -> Matrix<K> {
    let n = dim_v * dim_w;
    let mut m = Matrix::zeros(field.clone(), n, n);
    for i in 0..dim_v {
        for j in 0..dim_w {
            m.set(j * dim_v + i, i * dim_w + j, field.one());
        }
    }
    m
}

/// `(-1)^k` as a field element.
pub fn sign<K: Field>(field: &K, odd: bool) -> K::Elem {
    if odd {
        field.neg(&field.one())
    } else {
        field.one()
    }
}
