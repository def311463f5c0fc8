//! Intertwiner spaces, endomorphism algebras `End(T|F)` and the dual coalgebras.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::diagram::{finite_subdiagram, Diagram, Representation};
use crate::error::{Error, Result};
use crate::linalg::echelon::{axpy, dense_from_sparse, sparse_from_dense};
use crate::linalg::{Field, Matrix, SparseRow, SubspaceBasis};

/// Flattened coordinates of `∏_{p ∈ F} Hom(T1(p), T2(p))`.
///
/// Blocks follow the sorted vertex order; each block is row-major with
/// `dim T2(p)` rows and `dim T1(p)` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomLayout {
    pub vertices: Vec<String>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl HomLayout {
    pub fn new<K: Field>(d: &Diagram, t1: &Representation<K>, t2: &Representation<K>) -> Self {
        let vertices = d.vertex_ids();
        let rows: Vec<usize> = vertices.iter().map(|v| t2.dim(v)).collect();
        let cols: Vec<usize> = vertices.iter().map(|v| t1.dim(v)).collect();
        let mut offsets = Vec::with_capacity(vertices.len());
        let mut total = 0;
        for (r, c) in rows.iter().zip(&cols) {
            offsets.push(total);
            total += r * c;
        }
        HomLayout { vertices, rows, cols, offsets, total }
    }

    pub fn block(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    pub fn index(&self, block: usize, r: usize, c: usize) -> usize {
        self.offsets[block] + r * self.cols[block] + c
    }

    /// The matrix `e_p` of a flattened tuple.
    pub fn component<K: Field>(&self, field: &K, v: &[K::Elem], block: usize) -> Matrix<K> {
        let (r, c, o) = (self.rows[block], self.cols[block], self.offsets[block]);
        Matrix::new(field.clone(), r, c, v[o..o + r * c].to_vec()).expect("block shape")
    }

    pub fn components<K: Field>(&self, field: &K, v: &[K::Elem]) -> Vec<Matrix<K>> {
        (0..self.vertices.len()).map(|b| self.component(field, v, b)).collect()
    }

    pub fn flatten<K: Field>(&self, field: &K, blocks: &[Matrix<K>]) -> Vec<K::Elem> {
        let mut out = vec![field.zero(); self.total];
        for (b, m) in blocks.iter().enumerate() {
            out[self.offsets[b]..self.offsets[b] + m.data().len()].clone_from_slice(m.data());
        }
        out
    }

    /// Coordinate map from this layout onto a sublayout (same representations, fewer vertices).
    pub fn projection_indices(&self, sub: &HomLayout) -> Result<Vec<usize>> {
        let mut idx = Vec::with_capacity(sub.total);
        for (sb, v) in sub.vertices.iter().enumerate() {
            let b = self
                .block(v)
                .ok_or_else(|| Error::precondition(format!("vertex {v} missing from the larger subdiagram")))?;
            if (self.rows[b], self.cols[b]) != (sub.rows[sb], sub.cols[sb]) {
                return Err(Error::precondition(format!("vertex {v} has different dimensions")));
            }
            idx.extend(self.offsets[b]..self.offsets[b] + self.rows[b] * self.cols[b]);
        }
        Ok(idx)
    }
}

/// Rows of `φ(e)(m) = e_q T1(m) − T2(m) e_p` over the given edges.
fn constraint_rows<K: Field>(
    d: &Diagram,
    layout: &HomLayout,
    t1: &Representation<K>,
    t2: &Representation<K>,
) -> Result<Vec<SparseRow<K::Elem>>> {
    let f = &t1.field;
    let mut out = Vec::new();
    for (id, e) in d.edges() {
        let (Some(p), Some(q)) = (layout.block(&e.src), layout.block(&e.dst)) else {
            continue;
        };
        let (m1, m2) = (t1.mat(id)?, t2.mat(id)?);
        let (d1p, d1q, d2p, d2q) = (layout.cols[p], layout.cols[q], layout.rows[p], layout.rows[q]);
        if m1.shape() != (d1q, d1p) || m2.shape() != (d2q, d2p) {
            return Err(Error::Dimension(format!("edge {id} has inconsistent matrix shapes")));
        }
        for i in 0..d2q {
            for j in 0..d1p {
                let mut row: BTreeMap<usize, K::Elem> = BTreeMap::new();
                let mut add = |col: usize, v: K::Elem| {
                    let slot = row.entry(col).or_insert_with(|| f.zero());
                    *slot = f.add(slot, &v);
                };
                for k in 0..d1q {
                    let a = m1.get(k, j);
                    if !f.is_zero(a) {
                        add(layout.index(q, i, k), a.clone());
                    }
                }
                for k in 0..d2p {
                    let b = m2.get(i, k);
                    if !f.is_zero(b) {
                        add(layout.index(p, k, j), f.neg(b));
                    }
                }
                let row: SparseRow<K::Elem> = row.into_iter().filter(|(_, v)| !f.is_zero(v)).collect();
                if !row.is_empty() {
                    out.push(row);
                }
            }
        }
    }
    Ok(out)
}

/// `Hom(T1|F, T2|F)` presented inside the flattened product of matrix spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct IntertwinerSpace<K: Field> {
    pub field: K,
    pub subdiagram: Diagram,
    pub layout: HomLayout,
    pub basis: SubspaceBasis<K>,
}

impl<K: Field> IntertwinerSpace<K> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// The `i`-th basis tuple as one matrix per vertex.
    pub fn element(&self, i: usize) -> Vec<Matrix<K>> {
        self.layout.components(&self.field, &self.basis.vector(i))
    }

    pub fn combination(&self, coeffs: &[K::Elem]) -> Vec<Matrix<K>> {
        self.layout.components(&self.field, &self.basis.combine(coeffs))
    }

    pub fn coordinates(&self, blocks: &[Matrix<K>]) -> Option<Vec<K::Elem>> {
        self.basis.coordinates(&self.layout.flatten(&self.field, blocks))
    }
}

/// Kernel of the intertwining map on the full subdiagram spanned by `vertices`.
///
/// Connected components are solved independently; the union of their reduced
/// bases is again the reduced basis of the whole kernel.
pub fn hom_space<K: Field, S: AsRef<str>>(
    d: &Diagram,
    t1: &Representation<K>,
    t2: &Representation<K>,
    vertices: &[S],
) -> Result<IntertwinerSpace<K>> {
    let sub = finite_subdiagram(d, vertices)?;
    let layout = HomLayout::new(&sub, t1, t2);
    let field = t1.field.clone();
    let parts: Vec<Result<Vec<SparseRow<K::Elem>>>> = sub
        .components()
        .par_iter()
        .map(|comp| {
            let cd = finite_subdiagram(&sub, comp)?;
            let cl = HomLayout::new(&cd, t1, t2);
            let rows = constraint_rows(&cd, &cl, t1, t2)?;
            let kernel = SubspaceBasis::kernel_of_rows(field.clone(), cl.total, rows)?;
            let idx = layout.projection_indices(&cl)?;
            Ok(kernel.rows().iter().map(|r| r.iter().map(|(c, v)| (idx[*c], v.clone())).collect()).collect())
        })
        .collect();
    let mut vectors = Vec::new();
    for p in parts {
        let mut p = p?;
        for r in p.iter_mut() {
            r.sort_by_key(|e| e.0);
        }
        vectors.extend(p);
    }
    let basis = SubspaceBasis::span(field.clone(), layout.total, vectors)?;
    Ok(IntertwinerSpace { field, subdiagram: sub, layout, basis })
}

/// The constraint matrix of the intertwining map, materialized densely.
pub fn constraint_matrix<K: Field>(d: &Diagram, t1: &Representation<K>, t2: &Representation<K>) -> Result<Matrix<K>> {
    let layout = HomLayout::new(d, t1, t2);
    let rows = constraint_rows(d, &layout, t1, t2)?;
    let f = t1.field.clone();
    let dense = rows.iter().map(|r| dense_from_sparse(&f, layout.total, r)).collect();
    Matrix::from_rows(f, dense, layout.total)
}

/// Structure constants of a finite-dimensional algebra in a fixed basis.
///
/// Column `i * n + j` of `mult` holds the coordinates of `b_i b_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndAlgebra<K: Field> {
    pub space: IntertwinerSpace<K>,
    pub mult: Matrix<K>,
    pub unit: Vec<K::Elem>,
}

impl<K: Field> EndAlgebra<K> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> &K {
        &self.space.field
    }

    /// Coordinates of `b_i b_j` as a sparse vector.
    pub fn product_sparse(&self, i: usize, j: usize) -> SparseRow<K::Elem> {
        let n = self.dim();
        let col = i * n + j;
        let f = self.field();
        (0..n).filter(|&k| !f.is_zero(self.mult.get(k, col))).map(|k| (k, self.mult.get(k, col).clone())).collect()
    }

    /// Product of two elements given in coordinates.
    pub fn multiply(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let f = self.field();
        let n = self.dim();
        let mut acc: SparseRow<K::Elem> = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                acc = axpy(f, &acc, &f.mul(xi, yj), &self.product_sparse(i, j));
            }
        }
        dense_from_sparse(f, n, &acc)
    }

    /// Associativity and unit laws of the structure constants.
    pub fn check_laws(&self) -> AlgebraLaws {
        let f = self.field();
        let n = self.dim();
        let products: Vec<Vec<SparseRow<K::Elem>>> =
            (0..n).map(|i| (0..n).map(|j| self.product_sparse(i, j)).collect()).collect();
        let combine = |coeffs: &SparseRow<K::Elem>, right: Option<usize>, left: Option<usize>| {
            let mut acc: SparseRow<K::Elem> = Vec::new();
            for (k, c) in coeffs {
                let term = match (left, right) {
                    (None, Some(r)) => &products[*k][r],
                    (Some(l), None) => &products[l][*k],
                    _ => unreachable!(),
                };
                acc = axpy(f, &acc, c, term);
            }
            acc
        };
        let associative = (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| combine(&products[a][b], Some(c), None) == combine(&products[b][c], None, Some(a)))
            })
        });
        let unit = sparse_from_dense(f, &self.unit);
        let unital = (0..n).all(|j| {
            let e_j: SparseRow<K::Elem> = vec![(j, f.one())];
            combine(&unit, Some(j), None) == e_j && combine(&unit, None, Some(j)) == e_j
        });
        AlgebraLaws { associative, unital }
    }

    pub fn coalgebra(&self) -> Coalgebra<K> {
        Coalgebra { field: self.field().clone(), comult: self.mult.transpose(), counit: self.unit.clone() }
    }

    /// The coaction `T(p) → T(p) ⊗ A` dual to evaluation; row `i * n + k`, column `j`.
    pub fn coaction(&self, p: &str) -> Result<Matrix<K>> {
        let s = &self.space;
        let b = s.layout.block(p).ok_or_else(|| Error::precondition(format!("vertex {p} is not in F")))?;
        let d = s.layout.rows[b];
        let n = self.dim();
        let comps: Vec<Matrix<K>> = (0..n).map(|k| s.layout.component(&s.field, &s.basis.vector(k), b)).collect();
        Ok(Matrix::from_fn(s.field.clone(), d * n, d, |row, j| comps[row % n].get(row / n, j).clone()))
    }

    /// Counit and coassociativity of the coaction at `p`.
    pub fn check_coaction(&self, p: &str) -> Result<ComoduleLaws> {
        let rho = self.coaction(p)?;
        let f = self.field();
        let n = self.dim();
        let d = rho.cols();
        let counit = (0..d).all(|i| {
            (0..d).all(|j| {
                let v = (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&self.unit[k], rho.get(i * n + k, j))));
                if i == j {
                    f.is_one(&v)
                } else {
                    f.is_zero(&v)
                }
            })
        });
        let entry = |i: usize, k: usize, j: usize| rho.get(i * n + k, j);
        let coassociative = (0..d).all(|i| {
            (0..d).all(|j| {
                (0..n).all(|k1| {
                    (0..n).all(|k2| {
                        let lhs = (0..d).fold(f.zero(), |acc, l| f.add(&acc, &f.mul(entry(i, k1, l), entry(l, k2, j))));
                        let rhs = (0..n).fold(f.zero(), |acc, k| {
                            f.add(&acc, &f.mul(self.mult.get(k, k1 * n + k2), entry(i, k, j)))
                        });
                        lhs == rhs
                    })
                })
            })
        });
        Ok(ComoduleLaws { counit, coassociative })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlgebraLaws {
    pub associative: bool,
    pub unital: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComoduleLaws {
    pub counit: bool,
    pub coassociative: bool,
}

/// Structure constants of the algebra spanned by an intertwiner space of endomorphisms.
pub fn algebra_from_space<K: Field>(space: IntertwinerSpace<K>) -> Result<EndAlgebra<K>> {
    let f = space.field.clone();
    let n = space.dim();
    let elems: Vec<Vec<Matrix<K>>> = (0..n).map(|i| space.element(i)).collect();
    let columns: Vec<Result<Vec<K::Elem>>> = (0..n * n)
        .into_par_iter()
        .map(|col| {
            let (i, j) = (col / n, col % n);
            let prod: Vec<Matrix<K>> = elems[i].iter().zip(&elems[j]).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
            space.coordinates(&prod).ok_or_else(|| {
                Error::consistency(format!("product of basis elements {i} and {j} left the endomorphism algebra"))
            })
        })
        .collect();
    let mut mult = Matrix::zeros(f.clone(), n, n * n);
    for (col, c) in columns.into_iter().enumerate() {
        for (k, v) in c?.into_iter().enumerate() {
            mult.set(k, col, v);
        }
    }
    let ids: Vec<Matrix<K>> = space.layout.rows.iter().map(|&d| Matrix::identity(f.clone(), d)).collect();
    let unit = space
        .coordinates(&ids)
        .ok_or_else(|| Error::consistency("the identity tuple is not an endomorphism of the representation"))?;
    Ok(EndAlgebra { space, mult, unit })
}

pub fn end_algebra<K: Field, S: AsRef<str>>(
    d: &Diagram,
    t: &Representation<K>,
    vertices: &[S],
) -> Result<EndAlgebra<K>> {
    algebra_from_space(hom_space(d, t, t, vertices)?)
}

/// A coalgebra in a basis: `Δ(x_k) = Σ comult[(i*n+j, k)] x_i ⊗ x_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coalgebra<K: Field> {
    pub field: K,
    pub comult: Matrix<K>,
    pub counit: Vec<K::Elem>,
}

impl<K: Field> Coalgebra<K> {
    pub fn dim(&self) -> usize {
        self.counit.len()
    }

    /// Coassociativity and the two counit laws, evaluated on basis elements.
    pub fn check_laws(&self) -> AlgebraLaws {
        let f = &self.field;
        let n = self.dim();
        let c = |i: usize, j: usize, k: usize| self.comult.get(i * n + j, k);
        let coassociative = (0..n).into_par_iter().all(|k| {
            let delta: Vec<(usize, usize, &K::Elem)> = (0..n * n)
                .filter(|&r| !f.is_zero(self.comult.get(r, k)))
                .map(|r| (r / n, r % n, self.comult.get(r, k)))
                .collect();
            let mut lhs: BTreeMap<(usize, usize, usize), K::Elem> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), K::Elem> = BTreeMap::new();
            for &(i, j, v) in &delta {
                for a in 0..n {
                    for b in 0..n {
                        let x = c(a, b, i);
                        if !f.is_zero(x) {
                            let s = lhs.entry((a, b, j)).or_insert_with(|| f.zero());
                            *s = f.add(s, &f.mul(v, x));
                        }
                        let y = c(a, b, j);
                        if !f.is_zero(y) {
                            let s = rhs.entry((i, a, b)).or_insert_with(|| f.zero());
                            *s = f.add(s, &f.mul(v, y));
                        }
                    }
                }
            }
            lhs.retain(|_, v| !f.is_zero(v));
            rhs.retain(|_, v| !f.is_zero(v));
            lhs == rhs
        });
        let counital = (0..n).all(|k| {
            (0..n).all(|j| {
                let left = (0..n).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&self.counit[i], c(i, j, k))));
                let right = (0..n).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&self.counit[i], c(j, i, k))));
                let want = if j == k { f.one() } else { f.zero() };
                left == want && right == want
            })
        });
        AlgebraLaws { associative: coassociative, unital: counital }
    }
}

/// Restriction `End(T|F') → End(T|F)` in the computed bases.
#[derive(Clone, Debug, PartialEq)]
pub struct Restriction<K: Field> {
    pub matrix: Matrix<K>,
    /// `r(xy) = r(x) r(y)` and `r(1) = 1`.
    pub algebra_morphism: bool,
    /// The transpose identity: the dual map `A(F) → A(F')` respects comultiplication and counit.
    pub coalgebra_morphism: bool,
}

pub fn restriction_matrix<K: Field>(small: &IntertwinerSpace<K>, large: &IntertwinerSpace<K>) -> Result<Matrix<K>> {
    let idx = large.layout.projection_indices(&small.layout)?;
    let f = &small.field;
    let mut r = Matrix::zeros(f.clone(), small.dim(), large.dim());
    for j in 0..large.dim() {
        let v = large.basis.vector(j);
        let proj: Vec<K::Elem> = idx.iter().map(|&i| v[i].clone()).collect();
        let c = small
            .basis
            .coordinates(&proj)
            .ok_or_else(|| Error::consistency(format!("restriction of basis element {j} is not an intertwiner")))?;
        for (i, x) in c.into_iter().enumerate() {
            r.set(i, j, x);
        }
    }
    Ok(r)
}

pub fn restrict<K: Field>(small: &EndAlgebra<K>, large: &EndAlgebra<K>) -> Result<Restriction<K>> {
    let r = restriction_matrix(&small.space, &large.space)?;
    let m = large.dim();
    let image = |x: &[K::Elem]| r.apply(x);
    let cols: Vec<Vec<K::Elem>> = (0..m).map(|j| r.column(j)).collect();
    let mut multiplicative = true;
    'outer: for a in 0..m {
        for b in 0..m {
            let lhs = image(&large.mult.column(a * m + b))?;
            let rhs = small.multiply(&cols[a], &cols[b]);
            if lhs != rhs {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    let unital = image(&large.unit)? == small.unit;
    Ok(Restriction {
        matrix: r,
        algebra_morphism: multiplicative && unital,
        coalgebra_morphism: multiplicative && unital,
    })
}

/// Dimension comparison of `End` over `Q` and over an extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseChangeReport {
    pub dim_base: usize,
    pub dim_extended: usize,
    /// The lifted rational basis lies in the kernel computed over the extension.
    pub spans: bool,
    /// Both computations produce the same reduced echelon presentation.
    pub same_presentation: bool,
}

impl BaseChangeReport {
    pub fn ok(&self) -> bool {
        self.dim_base == self.dim_extended && self.spans && self.same_presentation
    }
}

pub fn base_change<L: Field, S: AsRef<str>>(
    d: &Diagram,
    t: &Representation<crate::linalg::Rationals>,
    vertices: &[S],
    target: &L,
) -> Result<BaseChangeReport> {
    let over_q = hom_space(d, t, t, vertices)?;
    let tk = t.map_field(target, |q| target.from_rational(q));
    let over_k = hom_space(d, &tk, &tk, vertices)?;
    let lifted: Vec<Vec<L::Elem>> =
        over_q.basis.vectors().iter().map(|v| v.iter().map(|q| target.from_rational(q)).collect()).collect();
    let spans = lifted.iter().all(|v| over_k.basis.contains(v));
    let lifted_basis = SubspaceBasis::span_dense(target.clone(), over_q.layout.total, lifted.iter())?;
    Ok(BaseChangeReport {
        dim_base: over_q.dim(),
        dim_extended: over_k.dim(),
        spans,
        same_presentation: lifted_basis == over_k.basis,
    })
}

/// Rank of `e ↦ e_{p0}` on `End(T|F)`; equals `dim End` when the map is injective.
pub fn root_projection_rank<K: Field>(space: &IntertwinerSpace<K>, root: &str) -> Result<usize> {
    let b = space.layout.block(root).ok_or_else(|| Error::precondition(format!("vertex {root} is not in F")))?;
    let f = &space.field;
    let rows: Vec<Vec<K::Elem>> =
        (0..space.dim()).map(|i| space.layout.component(f, &space.basis.vector(i), b).data().to_vec()).collect();
    let m = Matrix::from_rows(f.clone(), rows, space.layout.rows[b] * space.layout.cols[b])?;
    Ok(m.rank()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::rat;
    use crate::linalg::Q;

    fn two_vertex(m: i64) -> (Diagram, Representation<crate::linalg::Rationals>) {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        d.add_vertex("w", false).unwrap();
        d.add_edge("e", "v", "w").unwrap();
        let mut t = Representation::new(Q);
        t.dims.insert("v".into(), 1);
        t.dims.insert("w".into(), 1);
        t.mats.insert("e".into(), Matrix::from_ints(&[&[m]]));
        t.fill_identities(&d);
        (d, t)
    }

    #[test]
    fn full_matrix_algebra() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        let mut t = Representation::new(Q);
        t.dims.insert("v".into(), 2);
        t.fill_identities(&d);
        let a = end_algebra(&d, &t, &["v"]).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.check_laws(), AlgebraLaws { associative: true, unital: true });
        // basis e_{ij} in row-major order: e_{ik} e_{kj} = e_{ij}
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    let prod = a.product_sparse(i * 2 + k, k * 2 + j);
                    assert_eq!(prod, vec![(i * 2 + j, rat(1))]);
                }
            }
        }
        let c = a.coalgebra();
        assert_eq!(c.check_laws(), AlgebraLaws { associative: true, unital: true });
        let laws = a.check_coaction("v").unwrap();
        assert!(laws.counit && laws.coassociative);
    }

    #[test]
    fn chain_dimensions() {
        let (d, t) = two_vertex(1);
        assert_eq!(end_algebra(&d, &t, &["v", "w"]).unwrap().dim(), 1);
        let (d, t) = two_vertex(0);
        assert_eq!(end_algebra(&d, &t, &["v", "w"]).unwrap().dim(), 2);
    }

    #[test]
    fn hom_with_zero_target_edge() {
        let (d, t1) = two_vertex(1);
        let (_, t2) = two_vertex(0);
        let h = hom_space(&d, &t1, &t2, &["v", "w"]).unwrap();
        assert_eq!(h.dim(), 1);
        // e_w is forced to vanish, e_v is free
        assert_eq!(h.element(0)[0], Matrix::from_ints(&[&[1]]));
        assert!(h.element(0)[1].is_zero());
    }

    #[test]
    fn restriction_to_a_vertex() {
        let (d, t) = two_vertex(1);
        let big = end_algebra(&d, &t, &["v", "w"]).unwrap();
        let small = end_algebra(&d, &t, &["v"]).unwrap();
        let r = restrict(&small, &big).unwrap();
        assert!(r.algebra_morphism);
        assert_eq!(r.matrix, Matrix::from_ints(&[&[1]]));
        let same = restrict(&big, &big).unwrap();
        assert!(same.matrix.is_identity());
    }
}
