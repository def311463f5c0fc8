//! Formal period spaces `P(F)` presented by generators and relations, the map
//! Ψ onto the dual of the intertwiner space, the product of periods and the
//! coactions of the endomorphism coalgebras.

use crate::bialgebra::hom_comultiplication;
use crate::diagram::{finite_subdiagram, Diagram, GradedDiagram, GradedRepresentation, Representation};
use crate::endo::{algebra_from_space, hom_space, restriction_matrix, EndAlgebra, IntertwinerSpace};
use crate::error::{Error, Result};
use crate::linalg::echelon::{axpy, sparse_from_dense};
use crate::linalg::{bareiss, Field, Matrix, Rationals, SparseRow, SubspaceBasis};

/// Coordinates of `⊕_p T1(p) ⊗ T2(p)^∨`: the symbol `(p, e_i, e_j^∨)` sits at
/// `offset(p) + i * dim T2(p) + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodLayout {
    pub vertices: Vec<String>,
    pub d1: Vec<usize>,
    pub d2: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl PeriodLayout {
    pub fn new<K: Field>(d: &Diagram, t1: &Representation<K>, t2: &Representation<K>) -> Self {
        let vertices = d.vertex_ids();
        let d1: Vec<usize> = vertices.iter().map(|v| t1.dim(v)).collect();
        let d2: Vec<usize> = vertices.iter().map(|v| t2.dim(v)).collect();
        let mut offsets = Vec::new();
        let mut total = 0;
        for (a, b) in d1.iter().zip(&d2) {
            offsets.push(total);
            total += a * b;
        }
        PeriodLayout { vertices, d1, d2, offsets, total }
    }

    pub fn block(&self, v: &str) -> Option<usize> {
        self.vertices.binary_search_by(|x| x.as_str().cmp(v)).ok()
    }

    pub fn index(&self, block: usize, i: usize, j: usize) -> usize {
        self.offsets[block] + i * self.d2[block] + j
    }

    /// Inverse of `index`.
    pub fn locate(&self, idx: usize) -> (usize, usize, usize) {
        let b = self.offsets.partition_point(|&o| o <= idx) - 1;
        let b = (b..self.vertices.len()).find(|&x| self.d1[x] * self.d2[x] > idx - self.offsets[x]).unwrap_or(b);
        let r = idx - self.offsets[b];
        (b, r / self.d2[b], r % self.d2[b])
    }
}

/// The period space of a pair of representations on a finite subdiagram.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodSpace<K: Field> {
    pub field: K,
    pub subdiagram: Diagram,
    pub layout: PeriodLayout,
    pub relations: SubspaceBasis<K>,
    /// Ambient coordinates whose classes form the chosen basis of the quotient.
    pub representatives: Vec<usize>,
}

impl<K: Field> PeriodSpace<K> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Class of an ambient vector in the quotient basis.
    pub fn class_of(&self, v: &[(usize, K::Elem)]) -> Vec<K::Elem> {
        let residual = self.relations.residual(v);
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (c, x) in residual {
            let k = self.representatives.binary_search(&c).expect("residual lives on non-pivot columns");
            out[k] = x;
        }
        out
    }

    pub fn class_of_dense(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        self.class_of(&sparse_from_dense(&self.field, v))
    }

    /// Representative of basis class `k` as one `dim T1(p) × dim T2(p)` coefficient matrix per vertex.
    pub fn representative_matrices(&self, k: usize) -> Vec<(String, Matrix<K>)> {
        let (b, i, j) = self.layout.locate(self.representatives[k]);
        let f = &self.field;
        self.layout
            .vertices
            .iter()
            .enumerate()
            .map(|(x, v)| {
                let mut m = Matrix::zeros(f.clone(), self.layout.d1[x], self.layout.d2[x]);
                if x == b {
                    m.set(i, j, f.one());
                }
                (v.clone(), m)
            })
            .collect()
    }
}

/// Relation vector for `ω ∈ T1(p)`, `γ ∈ T2(p')^∨` along an edge `p → p'`.
fn relation_vector<K: Field>(
    layout: &PeriodLayout,
    (p, q): (usize, usize),
    m1: &Matrix<K>,
    m2: &Matrix<K>,
    omega: &[K::Elem],
    gamma: &[K::Elem],
) -> Result<SparseRow<K::Elem>> {
    let f = m1.field();
    let image = m1.apply(omega)?;
    let pulled = m2.transpose().apply(gamma)?;
    let mut v: SparseRow<K::Elem> = Vec::new();
    let mut push = |b: usize, x: &[K::Elem], y: &[K::Elem], negate: bool| {
        let mut part = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !f.is_zero(yj) {
                    part.push((layout.index(b, i, j), f.mul(xi, yj)));
                }
            }
        }
        let c = if negate { f.neg(&f.one()) } else { f.one() };
        v = axpy(f, &v, &c, &part);
    };
    push(q, &image, gamma, false);
    push(p, omega, &pulled, true);
    Ok(v)
}

/// Change-of-basis data for the basis-independence check: per vertex, columns
/// of `omega` give the `ω` used and rows of `gamma` give the `γ` used.
pub struct GeneratorBases<'a, K: Field> {
    pub omega: &'a dyn Fn(&str) -> Matrix<K>,
    pub gamma: &'a dyn Fn(&str) -> Matrix<K>,
}

fn build_relations<K: Field>(
    sub: &Diagram,
    layout: &PeriodLayout,
    t1: &Representation<K>,
    t2: &Representation<K>,
    bases: Option<&GeneratorBases<'_, K>>,
) -> Result<Vec<SparseRow<K::Elem>>> {
    let f = &t1.field;
    let mut rows = Vec::new();
    for (id, e) in sub.proper_edges() {
        let (p, q) = (layout.block(&e.src).unwrap(), layout.block(&e.dst).unwrap());
        let (m1, m2) = (t1.mat(id)?, t2.mat(id)?);
        let omegas: Vec<Vec<K::Elem>> = match bases {
            Some(b) => {
                let m = (b.omega)(&e.src);
                (0..m.cols()).map(|c| m.column(c)).collect()
            }
            None => (0..layout.d1[p]).map(|i| unit(f, layout.d1[p], i)).collect(),
        };
        let gammas: Vec<Vec<K::Elem>> = match bases {
            Some(b) => (b.gamma)(&e.dst).to_rows(),
            None => (0..layout.d2[q]).map(|j| unit(f, layout.d2[q], j)).collect(),
        };
        for w in &omegas {
            for g in &gammas {
                let r = relation_vector(layout, (p, q), m1, m2, w, g)?;
                if !r.is_empty() {
                    rows.push(r);
                }
            }
        }
    }
    Ok(rows)
}

fn unit<K: Field>(f: &K, n: usize, i: usize) -> Vec<K::Elem> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

pub fn period_space<K: Field, S: AsRef<str>>(
    d: &Diagram,
    t1: &Representation<K>,
    t2: &Representation<K>,
    vertices: &[S],
) -> Result<PeriodSpace<K>> {
    period_space_with_bases(d, t1, t2, vertices, None)
}

/// Period space whose relations are generated from the given bases of `T1(p)` and `T2(p')^∨`.
pub fn period_space_with_bases<K: Field, S: AsRef<str>>(
    d: &Diagram,
    t1: &Representation<K>,
    t2: &Representation<K>,
    vertices: &[S],
    bases: Option<&GeneratorBases<'_, K>>,
) -> Result<PeriodSpace<K>> {
    let sub = finite_subdiagram(d, vertices)?;
    let layout = PeriodLayout::new(&sub, t1, t2);
    let rows = build_relations(&sub, &layout, t1, t2, bases)?;
    let relations = SubspaceBasis::span(t1.field.clone(), layout.total, rows)?;
    let representatives = relations.free_columns();
    Ok(PeriodSpace { field: t1.field.clone(), subdiagram: sub, layout, relations, representatives })
}

/// Dimension of the period space computed with fraction-free integer elimination
/// on the raw relation vectors; shares no code with the echelon engine.
pub fn period_dimension_independent<S: AsRef<str>>(
    d: &Diagram,
    t1: &Representation<Rationals>,
    t2: &Representation<Rationals>,
    vertices: &[S],
) -> Result<usize> {
    let sub = finite_subdiagram(d, vertices)?;
    let layout = PeriodLayout::new(&sub, t1, t2);
    let rows = build_relations(&sub, &layout, t1, t2, None)?;
    let dense: Vec<Vec<_>> =
        rows.iter().map(|r| crate::linalg::echelon::dense_from_sparse(&t1.field, layout.total, r)).collect();
    Ok(layout.total - bareiss::rank(&dense))
}

/// Ψ on the ambient generators: column `(p, i, j)` holds `((h_k)_p[j][i])_k`.
pub fn psi_ambient<K: Field>(periods: &PeriodSpace<K>, hom: &IntertwinerSpace<K>) -> Result<Matrix<K>> {
    let f = &periods.field;
    let pl = &periods.layout;
    if pl.vertices != hom.layout.vertices {
        return Err(Error::precondition("period space and intertwiner space use different subdiagrams"));
    }
    let mut m = Matrix::zeros(f.clone(), hom.dim(), pl.total);
    for k in 0..hom.dim() {
        let v = hom.basis.vector(k);
        for b in 0..pl.vertices.len() {
            for i in 0..pl.d1[b] {
                for j in 0..pl.d2[b] {
                    let x = &v[hom.layout.index(b, j, i)];
                    if !f.is_zero(x) {
                        m.set(k, pl.index(b, i, j), x.clone());
                    }
                }
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsiReport<K: Field> {
    pub dim_periods: usize,
    pub dim_hom: usize,
    /// Ψ from the quotient basis of `P(F)` to the dual basis of `Hom(T1|F, T2|F)`.
    pub matrix: Matrix<K>,
    pub kills_relations: bool,
    pub bijective: bool,
}

pub fn psi<K: Field, S: AsRef<str>>(
    d: &Diagram,
    t1: &Representation<K>,
    t2: &Representation<K>,
    vertices: &[S],
) -> Result<PsiReport<K>> {
    let periods = period_space(d, t1, t2, vertices)?;
    let hom = hom_space(d, t1, t2, vertices)?;
    psi_from(&periods, &hom)
}

pub fn psi_from<K: Field>(periods: &PeriodSpace<K>, hom: &IntertwinerSpace<K>) -> Result<PsiReport<K>> {
    let amb = psi_ambient(periods, hom)?;
    let f = &periods.field;
    let kills_relations = (0..periods.relations.dim()).all(|r| {
        let v = periods.relations.vector(r);
        amb.apply(&v).map(|w| w.iter().all(|x| f.is_zero(x))).unwrap_or(false)
    });
    if !kills_relations {
        return Err(Error::consistency("Ψ does not vanish on the change-of-variables relations"));
    }
    let matrix =
        Matrix::from_fn(f.clone(), hom.dim(), periods.dim(), |k, c| amb.get(k, periods.representatives[c]).clone());
    let bijective = matrix.is_square() && matrix.is_invertible()?;
    Ok(PsiReport { dim_periods: periods.dim(), dim_hom: hom.dim(), matrix, kills_relations, bijective })
}

/// The map `P(F) → P(F')` induced by the inclusion `F ⊂ F'`, in quotient bases.
pub fn period_inclusion<K: Field>(small: &PeriodSpace<K>, large: &PeriodSpace<K>) -> Result<Matrix<K>> {
    let (sl, ll) = (&small.layout, &large.layout);
    let mut m = Matrix::zeros(small.field.clone(), large.dim(), small.dim());
    for (c, &idx) in small.representatives.iter().enumerate() {
        let (b, i, j) = sl.locate(idx);
        let lb = ll
            .block(&sl.vertices[b])
            .ok_or_else(|| Error::precondition(format!("vertex {} of F is not in F'", sl.vertices[b])))?;
        for (r, x) in large.class_of(&[(ll.index(lb, i, j), small.field.one())]).into_iter().enumerate() {
            m.set(r, c, x);
        }
    }
    Ok(m)
}

/// Product `P(F) ⊗ P(F) → P(F')` in quotient bases; column `a * n + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodProduct<K: Field> {
    pub small: PeriodSpace<K>,
    pub large: PeriodSpace<K>,
    pub matrix: Matrix<K>,
    pub well_defined: bool,
    pub commutative: bool,
    /// `Ψ(x·y) = Ψ(x)·Ψ(y)` for the bialgebra multiplication on the duals.
    pub multiplicative: bool,
}

/// `(p,ω,γ)·(p',ω',γ') = (p×p', τ1⁻¹(ω⊗ω'), (γ⊗γ')∘τ2)` on ambient generators.
fn generator_product<K: Field>(
    gd: &GradedDiagram,
    small: &PeriodLayout,
    large: &PeriodLayout,
    taus: &[(usize, Matrix<K>, Matrix<K>)],
    x: usize,
    y: usize,
    f: &K,
) -> SparseRow<K::Elem> {
    let (bx, i, j) = small.locate(x);
    let (by, i2, j2) = small.locate(y);
    let nv = small.vertices.len();
    let (lb, tau1_inv, tau2) = &taus[bx * nv + by];
    let _ = gd;
    let col = i * small.d1[by] + i2;
    let row = j * small.d2[by] + j2;
    let mut out = Vec::new();
    for a in 0..large.d1[*lb] {
        let u = tau1_inv.get(a, col);
        if f.is_zero(u) {
            continue;
        }
        for b in 0..large.d2[*lb] {
            let w = tau2.get(row, b);
            if !f.is_zero(w) {
                out.push((large.index(*lb, a, b), f.mul(u, w)));
            }
        }
    }
    out
}

pub fn period_product<K: Field, S: AsRef<str>>(
    gd: &GradedDiagram,
    t1: &GradedRepresentation<K>,
    t2: &GradedRepresentation<K>,
    small: &[S],
    large: &[S],
) -> Result<PeriodProduct<K>> {
    let d = &gd.diagram;
    let f = t1.rep.field.clone();
    let ps = period_space(d, &t1.rep, &t2.rep, small)?;
    let pl = period_space(d, &t1.rep, &t2.rep, large)?;
    let missing = gd.product.missing_products(&ps.layout.vertices, &pl.subdiagram);
    if !missing.is_empty() {
        return Err(Error::precondition(format!("products missing from F': {}", missing.join(", "))));
    }
    let sl = &ps.layout;
    let nv = sl.vertices.len();
    let mut taus = Vec::with_capacity(nv * nv);
    for a in &sl.vertices {
        for b in &sl.vertices {
            let ab = gd.product.times(a, b).unwrap();
            let lb = pl.layout.block(ab).unwrap();
            taus.push((lb, t1.tau(a, b)?.inverse_or_err("tau")?, t2.tau(a, b)?.clone()));
        }
    }
    let prod = |x: usize, y: usize| generator_product(gd, sl, &pl.layout, &taus, x, y, &f);
    let n = ps.dim();
    let mut matrix = Matrix::zeros(f.clone(), pl.dim(), n * n);
    for a in 0..n {
        for b in 0..n {
            let cls = pl.class_of(&prod(ps.representatives[a], ps.representatives[b]));
            for (r, x) in cls.into_iter().enumerate() {
                matrix.set(r, a * n + b, x);
            }
        }
    }

    // Relations of P(F) must multiply into relations of P(F').
    let lift = |v: &[(usize, K::Elem)], y: usize, left: bool| {
        let mut acc: SparseRow<K::Elem> = Vec::new();
        for (x, c) in v {
            let term = if left { prod(*x, y) } else { prod(y, *x) };
            acc = axpy(&f, &acc, c, &term);
        }
        acc
    };
    let well_defined = ps.relations.rows().iter().all(|r| {
        (0..sl.total).all(|y| {
            pl.class_of(&lift(r, y, true)).iter().all(|x| f.is_zero(x))
                && pl.class_of(&lift(r, y, false)).iter().all(|x| f.is_zero(x))
        })
    });
    let commutative = (0..n).all(|a| (0..n).all(|b| matrix.column(a * n + b) == matrix.column(b * n + a)));

    let hs = hom_space(d, &t1.rep, &t2.rep, small)?;
    let hl = hom_space(d, &t1.rep, &t2.rep, large)?;
    let psi_s = psi_from(&ps, &hs)?.matrix;
    let psi_l = psi_from(&pl, &hl)?.matrix;
    let mult = hom_comultiplication(gd, t1, t2, &hs, &hl)?.transpose();
    let mut multiplicative = true;
    let hn = hs.dim();
    'outer: for a in 0..n {
        for b in 0..n {
            let lhs = psi_l.apply(&matrix.column(a * n + b))?;
            let (pa, pb) = (psi_s.column(a), psi_s.column(b));
            let mut t = vec![f.zero(); hn * hn];
            for i in 0..hn {
                for j in 0..hn {
                    t[i * hn + j] = f.mul(&pa[i], &pb[j]);
                }
            }
            if lhs != mult.apply(&t)? {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    Ok(PeriodProduct { small: ps, large: pl, matrix, well_defined, commutative, multiplicative })
}

/// Coactions of the endomorphism coalgebras on `A₁,₂ = Hom(T1|F, T2|F)^∨`.
///
/// `left : A₁,₂ → A₂ ⊗ A₁,₂` is dual to postcomposition `End(T2) × Hom → Hom`,
/// `right : A₁,₂ → A₁,₂ ⊗ A₁` is dual to precomposition `Hom × End(T1) → Hom`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coactions<K: Field> {
    pub hom: IntertwinerSpace<K>,
    pub end1: EndAlgebra<K>,
    pub end2: EndAlgebra<K>,
    /// Row `k * H + l`, column `m`: coefficient of `h_m` in `e_k ∘ h_l`.
    pub left: Matrix<K>,
    /// Row `l * n1 + k`, column `m`: coefficient of `h_m` in `h_l ∘ e_k`.
    pub right: Matrix<K>,
    pub counit: bool,
    pub coassociative: bool,
}

pub fn coactions<K: Field, S: AsRef<str>>(
    d: &Diagram,
    t1: &Representation<K>,
    t2: &Representation<K>,
    vertices: &[S],
) -> Result<Coactions<K>> {
    let hom = hom_space(d, t1, t2, vertices)?;
    let end1 = algebra_from_space(hom_space(d, t1, t1, vertices)?)?;
    let end2 = algebra_from_space(hom_space(d, t2, t2, vertices)?)?;
    let f = hom.field.clone();
    let (h, n1, n2) = (hom.dim(), end1.dim(), end2.dim());
    let hs: Vec<Vec<Matrix<K>>> = (0..h).map(|i| hom.element(i)).collect();
    let e1: Vec<Vec<Matrix<K>>> = (0..n1).map(|i| end1.space.element(i)).collect();
    let e2: Vec<Vec<Matrix<K>>> = (0..n2).map(|i| end2.space.element(i)).collect();
    let compose = |a: &[Matrix<K>], b: &[Matrix<K>]| -> Result<Vec<K::Elem>> {
        let blocks: Vec<Matrix<K>> = a.iter().zip(b).map(|(x, y)| x.mul(y)).collect::<Result<_>>()?;
        hom.coordinates(&blocks).ok_or_else(|| Error::consistency("a composite of intertwiners is not an intertwiner"))
    };
    let mut left = Matrix::zeros(f.clone(), n2 * h, h);
    for k in 0..n2 {
        for l in 0..h {
            for (m, x) in compose(&e2[k], &hs[l])?.into_iter().enumerate() {
                left.set(k * h + l, m, x);
            }
        }
    }
    let mut right = Matrix::zeros(f.clone(), h * n1, h);
    for l in 0..h {
        for k in 0..n1 {
            for (m, x) in compose(&hs[l], &e1[k])?.into_iter().enumerate() {
                right.set(l * n1 + k, m, x);
            }
        }
    }
    let sum = |terms: &mut dyn Iterator<Item = K::Elem>| terms.fold(f.zero(), |a, b| f.add(&a, &b));
    let delta = |l: usize, m: usize| if l == m { f.one() } else { f.zero() };
    let counit = (0..h).all(|l| {
        (0..h).all(|m| {
            sum(&mut (0..n2).map(|k| f.mul(&end2.unit[k], left.get(k * h + l, m)))) == delta(l, m)
                && sum(&mut (0..n1).map(|k| f.mul(&end1.unit[k], right.get(l * n1 + k, m)))) == delta(l, m)
        })
    });
    // Action-level form: e_a(e_b h) = (e_a e_b) h and (h e_a) e_b = h (e_a e_b).
    let coassociative = (0..n2).all(|a| {
        (0..n2).all(|b| {
            (0..h).all(|l| {
                (0..h).all(|q| {
                    let lhs = sum(&mut (0..h).map(|m| f.mul(left.get(b * h + l, m), left.get(a * h + m, q))));
                    let rhs = sum(&mut (0..n2).map(|c| f.mul(end2.mult.get(c, a * n2 + b), left.get(c * h + l, q))));
                    lhs == rhs
                })
            })
        })
    }) && (0..n1).all(|a| {
        (0..n1).all(|b| {
            (0..h).all(|l| {
                (0..h).all(|q| {
                    let lhs = sum(&mut (0..h).map(|m| f.mul(right.get(l * n1 + a, m), right.get(m * n1 + b, q))));
                    let rhs = sum(&mut (0..n1).map(|c| f.mul(end1.mult.get(c, a * n1 + b), right.get(l * n1 + c, q))));
                    lhs == rhs
                })
            })
        })
    });
    Ok(Coactions { hom, end1, end2, left, right, counit, coassociative })
}

/// The coactions on `F ⊂ F'` commute with restriction.
pub fn coactions_compatible<K: Field>(small: &Coactions<K>, large: &Coactions<K>) -> Result<bool> {
    let rh = restriction_matrix(&small.hom, &large.hom)?;
    let r1 = restriction_matrix(&small.end1.space, &large.end1.space)?;
    let r2 = restriction_matrix(&small.end2.space, &large.end2.space)?;
    let f = &small.hom.field;
    let (h, hl) = (small.hom.dim(), large.hom.dim());
    let (n1, n1l, n2, n2l) = (small.end1.dim(), large.end1.dim(), small.end2.dim(), large.end2.dim());
    let sum = |it: &mut dyn Iterator<Item = K::Elem>| it.fold(f.zero(), |a, b| f.add(&a, &b));
    // r(e h) = r(e) r(h) for basis elements of the larger spaces.
    for k in 0..n2l {
        for l in 0..hl {
            let lhs = rh.apply(large.left.row(k * hl + l))?;
            let rhs: Vec<K::Elem> = (0..h)
                .map(|q| {
                    sum(&mut (0..n2)
                        .flat_map(|a| (0..h).map(move |m| (a, m)))
                        .map(|(a, m)| f.mul(&f.mul(r2.get(a, k), rh.get(m, l)), small.left.get(a * h + m, q))))
                })
                .collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    for l in 0..hl {
        for k in 0..n1l {
            let lhs = rh.apply(large.right.row(l * n1l + k))?;
            let rhs: Vec<K::Elem> = (0..h)
                .map(|q| {
                    sum(&mut (0..h)
                        .flat_map(|m| (0..n1).map(move |a| (m, a)))
                        .map(|(m, a)| f.mul(&f.mul(rh.get(m, l), r1.get(a, k)), small.right.get(m * n1 + a, q))))
                })
                .collect();
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;

    fn rep(d: &Diagram, dims: &[(&str, usize)], mats: &[(&str, Matrix<Rationals>)]) -> Representation<Rationals> {
        let mut t = Representation::new(Q);
        for (v, n) in dims {
            t.dims.insert(v.to_string(), *n);
        }
        for (e, m) in mats {
            t.mats.insert(e.to_string(), m.clone());
        }
        t.fill_identities(d);
        t
    }

    #[test]
    fn single_vertex_periods() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        let t = rep(&d, &[("v", 1)], &[]);
        let r = psi(&d, &t, &t, &["v"]).unwrap();
        assert_eq!((r.dim_periods, r.dim_hom, r.bijective), (1, 1, true));
        let t = rep(&d, &[("v", 3)], &[]);
        let r = psi(&d, &t, &t, &["v"]).unwrap();
        assert_eq!((r.dim_periods, r.dim_hom, r.bijective), (9, 9, true));
    }

    #[test]
    fn edge_identifies_generators() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        d.add_vertex("w", false).unwrap();
        d.add_edge("e", "v", "w").unwrap();
        let t = rep(&d, &[("v", 1), ("w", 1)], &[("e", Matrix::from_ints(&[&[1]]))]);
        let p = period_space(&d, &t, &t, &["v", "w"]).unwrap();
        assert_eq!(p.dim(), 1);
        assert_eq!(period_dimension_independent(&d, &t, &t, &["v", "w"]).unwrap(), 1);
    }

    #[test]
    fn zero_dimensional_vertex_contributes_nothing() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        d.add_vertex("z", false).unwrap();
        let t = rep(&d, &[("v", 1), ("z", 0)], &[]);
        assert_eq!(period_space(&d, &t, &t, &["v", "z"]).unwrap().dim(), 1);
    }

    #[test]
    fn incompatible_edges_give_zero() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        d.add_vertex("w", false).unwrap();
        d.add_edge("e", "v", "w").unwrap();
        d.add_edge("g", "v", "w").unwrap();
        let t1 =
            rep(&d, &[("v", 1), ("w", 1)], &[("e", Matrix::from_ints(&[&[1]])), ("g", Matrix::from_ints(&[&[0]]))]);
        let t2 =
            rep(&d, &[("v", 1), ("w", 1)], &[("e", Matrix::from_ints(&[&[0]])), ("g", Matrix::from_ints(&[&[1]]))]);
        let r = psi(&d, &t1, &t2, &["v", "w"]).unwrap();
        assert_eq!((r.dim_periods, r.dim_hom, r.bijective), (0, 0, true));
    }

    #[test]
    fn layout_locate_round_trips() {
        let mut d = Diagram::new();
        for v in ["a", "b", "c"] {
            d.add_vertex(v, false).unwrap();
        }
        let t1 = rep(&d, &[("a", 2), ("b", 0), ("c", 3)], &[]);
        let t2 = rep(&d, &[("a", 1), ("b", 4), ("c", 2)], &[]);
        let l = PeriodLayout::new(&d, &t1, &t2);
        for idx in 0..l.total {
            let (b, i, j) = l.locate(idx);
            assert_eq!(l.index(b, i, j), idx);
        }
    }

    #[test]
    fn matrix_coactions_on_one_vertex() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        let t = rep(&d, &[("v", 2)], &[]);
        let c = coactions(&d, &t, &t, &["v"]).unwrap();
        assert!(c.counit && c.coassociative);
    }

    fn graded_pair(
    ) -> (crate::fixtures::TensorFixture, GradedRepresentation<Rationals>, GradedRepresentation<Rationals>) {
        use crate::fixtures::*;
        use rand::SeedableRng;
        let ld = LeafDiagram {
            leaves: vec![("a".into(), false), ("b".into(), true)],
            edges: vec![("g".into(), "a".into(), "a".into())],
        };
        let leaf = LeafRep { dims: vec![2, 1], mats: vec![Matrix::from_ints(&[&[1, 1], &[0, 1]])] };
        let fx = tensor_words(&ld, 1, crate::diagram::SignRule::Literal).unwrap();
        let t = tensor_representation(&fx, &Q, &leaf).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let t2 = transport(&fx.graded, &t, &mut rng, true).unwrap();
        (fx, t, t2)
    }

    #[test]
    fn graded_period_product() {
        let (fx, t1, t2) = graded_pair();
        let pr = period_product(&fx.graded, &t1, &t2, fx.level(0), fx.level(1)).unwrap();
        assert!(pr.well_defined && pr.commutative && pr.multiplicative);
        assert_eq!(pr.small.dim(), 4);

        // (𝟙, 1, 1) is a unit
        let n = pr.small.dim();
        let b = pr.small.layout.block("1").unwrap();
        let one = pr.small.class_of(&[(pr.small.layout.index(b, 0, 0), crate::linalg::field::rat(1))]);
        let inc = period_inclusion(&pr.small, &pr.large).unwrap();
        for x in 0..n {
            let mut e = vec![crate::linalg::field::rat(0); n];
            e[x] = crate::linalg::field::rat(1);
            let mut t = vec![crate::linalg::field::rat(0); n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = &one[i] * &e[j];
                }
            }
            assert_eq!(pr.matrix.apply(&t).unwrap(), inc.column(x));
        }
    }

    #[test]
    fn equal_representations_recover_end() {
        let (fx, t, _) = graded_pair();
        let vs = fx.level(1);
        let r = psi(&fx.graded.diagram, &t.rep, &t.rep, vs).unwrap();
        let end = crate::endo::end_algebra(&fx.graded.diagram, &t.rep, vs).unwrap();
        assert!(r.bijective);
        assert_eq!(r.dim_periods, end.dim());
    }

    #[test]
    fn coactions_restrict() {
        let (fx, t1, t2) = graded_pair();
        let d = &fx.graded.diagram;
        let small = coactions(d, &t1.rep, &t2.rep, fx.level(0)).unwrap();
        let large = coactions(d, &t1.rep, &t2.rep, fx.level(1)).unwrap();
        assert!(small.counit && small.coassociative && large.counit && large.coassociative);
        assert!(coactions_compatible(&small, &large).unwrap());
    }

    #[test]
    fn scalar_endomorphisms_coact_trivially() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        let t = rep(&d, &[("v", 1)], &[]);
        let c = coactions(&d, &t, &t, &["v"]).unwrap();
        assert_eq!(c.left, Matrix::from_ints(&[&[1]]));
        assert_eq!(c.right, Matrix::from_ints(&[&[1]]));
    }

    mod props {
        use super::super::*;
        use crate::fixtures::{random_diagram, random_invertible, random_representation};
        use crate::linalg::Q;
        use proptest::prelude::*;
        use rand::SeedableRng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn relations_do_not_depend_on_bases(seed in any::<u64>()) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let d = random_diagram(&mut rng, 3, 4);
                let t1 = random_representation(&Q, &mut rng, &d, None, 3, 2);
                let t2 = random_representation(&Q, &mut rng, &d, None, 3, 2);
                let vs = d.vertex_ids();
                let mut om = std::collections::BTreeMap::new();
                let mut ga = std::collections::BTreeMap::new();
                for v in &vs {
                    om.insert(v.clone(), random_invertible(&Q, &mut rng, t1.dim(v), 3));
                    ga.insert(v.clone(), random_invertible(&Q, &mut rng, t2.dim(v), 3));
                }
                let omega = |v: &str| om[v].clone();
                let gamma = |v: &str| ga[v].clone();
                let bases = GeneratorBases { omega: &omega, gamma: &gamma };
                let a = period_space(&d, &t1, &t2, &vs).unwrap();
                let b = period_space_with_bases(&d, &t1, &t2, &vs, Some(&bases)).unwrap();
                prop_assert_eq!(a.relations, b.relations);
            }

            #[test]
            fn psi_is_bijective(seed in any::<u64>()) {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                let d = random_diagram(&mut rng, 3, 4);
                let t1 = random_representation(&Q, &mut rng, &d, None, 3, 2);
                let t2 = random_representation(&Q, &mut rng, &d, None, 3, 2);
                let vs = d.vertex_ids();
                let r = psi(&d, &t1, &t2, &vs).unwrap();
                prop_assert!(r.bijective);
                prop_assert_eq!(r.dim_periods, period_dimension_independent(&d, &t1, &t2, &vs).unwrap());
            }
        }
    }
}
