//! The comultiplication on endomorphism algebras induced by a graded product
//! structure, its counit, and the dual bialgebra multiplication.

use rayon::prelude::*;

use crate::diagram::{validate_graded, GradedCheckOptions, GradedDiagram, GradedRepresentation};
use crate::endo::{end_algebra, hom_space, restriction_matrix, EndAlgebra, IntertwinerSpace};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::report::Report;

/// Coordinates of an element of the tensor ambient in the basis `b_i ⊗ b_j`.
///
/// `entry(x, y)` reads the ambient coordinate `(x, y)`. Returns `None` when the
/// element is not in `span(b) ⊗ span(b)`.
fn tensor_coordinates<K: Field>(space: &IntertwinerSpace<K>, entries: &[Vec<K::Elem>]) -> Option<Vec<K::Elem>> {
    let f = &space.field;
    let n = space.dim();
    let piv = space.basis.pivots();
    let c: Vec<Vec<K::Elem>> = (0..n).map(|i| (0..n).map(|j| entries[piv[i]][piv[j]].clone()).collect()).collect();
    // Rebuild Σ c_ij b_i ⊗ b_j as B^T C B and compare entrywise.
    let total = space.layout.total;
    let b = Matrix::from_rows(f.clone(), space.basis.vectors(), total).ok()?;
    let cm = Matrix::from_rows(f.clone(), c.clone(), n).ok()?;
    let rebuilt = b.transpose().mul(&cm).ok()?.mul(&b).ok()?;
    let same = (0..total).all(|x| (0..total).all(|y| *rebuilt.get(x, y) == entries[x][y]));
    same.then(|| c.into_iter().flatten().collect())
}

/// Matrix of `Hom(T1|F', T2|F') → Hom(T1|F, T2|F) ⊗ Hom(T1|F, T2|F)`,
/// `φ ↦ (τ2 φ_{f×g} τ1⁻¹)_{f,g}`, with rows `i * n + j`.
pub fn hom_comultiplication<K: Field>(
    gd: &GradedDiagram,
    t1: &GradedRepresentation<K>,
    t2: &GradedRepresentation<K>,
    small: &IntertwinerSpace<K>,
    large: &IntertwinerSpace<K>,
) -> Result<Matrix<K>> {
    let f = &small.field;
    let missing = gd.product.missing_products(&small.layout.vertices, &large.subdiagram);
    if !missing.is_empty() {
        return Err(Error::precondition(format!(
            "products missing from the larger subdiagram: {}",
            missing.join(", ")
        )));
    }
    let lay = &small.layout;
    let nv = lay.vertices.len();
    let mut blocks = Vec::with_capacity(nv * nv);
    for a in 0..nv {
        for b in 0..nv {
            let (fa, fb) = (&lay.vertices[a], &lay.vertices[b]);
            let ab = gd.product.times(fa, fb).unwrap();
            let lb = large.layout.block(ab).unwrap();
            let tau1_inv = t1.tau(fa, fb)?.inverse_or_err("tau")?;
            let tau2 = t2.tau(fa, fb)?.clone();
            blocks.push((a, b, lb, tau1_inv, tau2));
        }
    }
    let n = small.dim();
    let total = lay.total;
    let columns: Vec<Result<Vec<K::Elem>>> = (0..large.dim())
        .into_par_iter()
        .map(|col| {
            let v = large.basis.vector(col);
            let mut entries = vec![vec![f.zero(); total]; total];
            for (a, b, lb, tau1_inv, tau2) in &blocks {
                let phi = large.layout.component(f, &v, *lb);
                let m = tau2.mul(&phi)?.mul(tau1_inv)?;
                let (ra, ca, rb, cb) = (lay.rows[*a], lay.cols[*a], lay.rows[*b], lay.cols[*b]);
                for r in 0..ra {
                    for c in 0..ca {
                        for r2 in 0..rb {
                            for c2 in 0..cb {
                                let x = m.get(r * rb + r2, c * cb + c2);
                                if !f.is_zero(x) {
                                    entries[lay.index(*a, r, c)][lay.index(*b, r2, c2)] = x.clone();
                                }
                            }
                        }
                    }
                }
            }
            tensor_coordinates(small, &entries).ok_or_else(|| {
                Error::consistency(format!(
                    "the image of basis element {col} is not in the tensor square of the smaller intertwiner space"
                ))
            })
        })
        .collect();
    let mut out = Matrix::zeros(f.clone(), n * n, large.dim());
    for (col, c) in columns.into_iter().enumerate() {
        for (row, x) in c?.into_iter().enumerate() {
            out.set(row, col, x);
        }
    }
    Ok(out)
}

/// Whether `Swap ∘ Δ = Δ` for a map into a tensor square with rows `i * n + j`.
pub fn is_cocommutative<K: Field>(delta: &Matrix<K>, n: usize) -> bool {
    (0..n).all(|i| (0..n).all(|j| delta.row(i * n + j) == delta.row(j * n + i)))
}

/// Sparse `kron` of two columns, accumulated with a coefficient into `out`.
fn add_kron<K: Field>(f: &K, out: &mut [K::Elem], coeff: &K::Elem, u: &[K::Elem], v: &[K::Elem]) {
    let m = v.len();
    for (i, x) in u.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        let cx = f.mul(coeff, x);
        for (j, y) in v.iter().enumerate() {
            if !f.is_zero(y) {
                out[i * m + j] = f.add(&out[i * m + j], &f.mul(&cx, y));
            }
        }
    }
}

/// `(Δ ⊗ r) ∘ Δ' == (r ⊗ Δ) ∘ Δ'`, where `Δ : A' → A⊗A`, `r : A' → A`, `Δ' : A'' → A'⊗A'`.
pub fn is_coassociative<K: Field>(delta: &Matrix<K>, r: &Matrix<K>, delta_large: &Matrix<K>) -> bool {
    let f = r.field();
    let (n, m) = r.shape();
    let cols_delta: Vec<Vec<K::Elem>> = (0..m).map(|j| delta.column(j)).collect();
    let cols_r: Vec<Vec<K::Elem>> = (0..m).map(|j| r.column(j)).collect();
    (0..delta_large.cols()).into_par_iter().all(|a| {
        let mut lhs = vec![f.zero(); n * n * n];
        let mut rhs = vec![f.zero(); n * n * n];
        for i in 0..m {
            for j in 0..m {
                let c = delta_large.get(i * m + j, a);
                if f.is_zero(c) {
                    continue;
                }
                add_kron(f, &mut lhs, c, &cols_delta[i], &cols_r[j]);
                add_kron(f, &mut rhs, c, &cols_r[i], &cols_delta[j]);
            }
        }
        lhs == rhs
    })
}

/// Counit `ε(a) = a_𝟙` on `End(T|F)`.
pub fn counit<K: Field>(gd: &GradedDiagram, alg: &EndAlgebra<K>) -> Result<Vec<K::Elem>> {
    let unit = &gd.product.unit;
    let s = &alg.space;
    let b = s.layout.block(unit).ok_or_else(|| Error::precondition(format!("the unit vertex {unit} is not in F")))?;
    if s.layout.rows[b] != 1 {
        return Err(Error::precondition(format!("T({unit}) has dimension {}, expected 1", s.layout.rows[b])));
    }
    Ok((0..alg.dim()).map(|i| s.layout.component(&s.field, &s.basis.vector(i), b).get(0, 0).clone()).collect())
}

/// `(ε ⊗ id) ∘ Δ` and `(id ⊗ ε) ∘ Δ`, each an `n × m` matrix.
pub fn counit_contractions<K: Field>(delta: &Matrix<K>, eps: &[K::Elem]) -> (Matrix<K>, Matrix<K>) {
    let f = delta.field();
    let n = eps.len();
    let m = delta.cols();
    let left = Matrix::from_fn(f.clone(), n, m, |j, a| {
        (0..n).fold(f.zero(), |acc, i| f.add(&acc, &f.mul(&eps[i], delta.get(i * n + j, a))))
    });
    let right = Matrix::from_fn(f.clone(), n, m, |i, a| {
        (0..n).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&eps[j], delta.get(i * n + j, a))))
    });
    (left, right)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BialgebraReport<K: Field> {
    pub small: Vec<String>,
    pub large: Vec<String>,
    pub dim_small: usize,
    pub dim_large: usize,
    /// `μ* : End(T|F') → End(T|F) ⊗ End(T|F)`, rows `i * n + j`.
    pub comultiplication: Matrix<K>,
    /// Restriction `End(T|F') → End(T|F)`.
    pub restriction: Matrix<K>,
    pub counit: Option<Vec<K::Elem>>,
    /// Graded-representation axioms on the larger subdiagram.
    pub graded: Report,
    pub well_defined: bool,
    pub cocommutative: bool,
    pub counit_left: Option<bool>,
    pub counit_right: Option<bool>,
    /// Set when a third subdiagram was supplied.
    pub coassociative: Option<bool>,
}

impl<K: Field> BialgebraReport<K> {
    pub fn ok(&self) -> bool {
        self.graded.is_ok()
            && self.well_defined
            && self.cocommutative
            && self.counit_left != Some(false)
            && self.counit_right != Some(false)
            && self.coassociative != Some(false)
    }

    /// Multiplication `A(F) ⊗ A(F) → A(F')` dual to `μ*`.
    pub fn multiplication(&self) -> Matrix<K> {
        self.comultiplication.transpose()
    }

    /// Commutativity of the dual multiplication (symmetric structure constants).
    pub fn commutative(&self) -> bool {
        let m = self.multiplication();
        let n = self.dim_small;
        (0..n).all(|i| (0..n).all(|j| m.column(i * n + j) == m.column(j * n + i)))
    }
}

/// Builds `μ*` for `F ⊂ F'` and checks its laws; `chain` optionally supplies
/// `F''` containing all products of `F'` for the coassociativity check.
pub fn comultiplication<K: Field, S: AsRef<str>>(
    gd: &GradedDiagram,
    t: &GradedRepresentation<K>,
    small: &[S],
    large: &[S],
    chain: Option<&[S]>,
) -> Result<BialgebraReport<K>> {
    let d = &gd.diagram;
    let large_sub = crate::diagram::finite_subdiagram(d, large)?;
    let small_set: Vec<&str> = small.iter().map(|s| s.as_ref()).collect();
    if let Some(v) = small_set.iter().find(|v| !large_sub.has_vertex(v)) {
        return Err(Error::precondition(format!("vertex {v} of F is not in F'")));
    }
    let missing = gd.product.missing_products(small, &large_sub);
    if !missing.is_empty() {
        return Err(Error::precondition(format!("products missing from F': {}", missing.join(", "))));
    }
    let graded_sub = GradedDiagram { diagram: large_sub.clone(), product: restrict_product(gd, &large_sub) };
    let graded = validate_graded(&graded_sub, &restrict_graded(t, &large_sub), GradedCheckOptions::default());

    let alg = end_algebra(d, &t.rep, small)?;
    let big = hom_space(d, &t.rep, &t.rep, large)?;
    // A component outside the tensor square is a fault, so reaching here means well defined.
    let delta = hom_comultiplication(gd, t, t, &alg.space, &big)?;
    let well_defined = true;
    let n = alg.dim();
    let restriction = restriction_matrix(&alg.space, &big)?;
    let cocommutative = is_cocommutative(&delta, n);
    let eps = counit(gd, &alg).ok();
    let (counit_left, counit_right) = match &eps {
        Some(e) => {
            let (l, r) = counit_contractions(&delta, e);
            (Some(l == restriction), Some(r == restriction))
        }
        None => (None, None),
    };
    let coassociative = match chain {
        Some(top) => {
            let top_space = hom_space(d, &t.rep, &t.rep, top)?;
            let delta_large = hom_comultiplication(gd, t, t, &big, &top_space)?;
            Some(is_coassociative(&delta, &restriction, &delta_large))
        }
        None => None,
    };
    Ok(BialgebraReport {
        small: alg.space.layout.vertices.clone(),
        large: big.layout.vertices.clone(),
        dim_small: n,
        dim_large: big.dim(),
        comultiplication: delta,
        restriction,
        counit: eps,
        graded,
        well_defined,
        cocommutative,
        counit_left,
        counit_right,
        coassociative,
    })
}

/// The product tables restricted to entries living inside `sub`.
pub fn restrict_product(gd: &GradedDiagram, sub: &crate::diagram::Diagram) -> crate::diagram::ProductStructure {
    let p = &gd.product;
    let has = |v: &str| sub.has_vertex(v);
    let has_edge = |e: &str| sub.edge(e).is_some();
    let mut out = crate::diagram::ProductStructure { unit: p.unit.clone(), ..Default::default() };
    for ((a, b), ab) in &p.product {
        if has(a) && has(b) && has(ab) {
            out.product.insert((a.clone(), b.clone()), ab.clone());
        }
    }
    let defined = |a: &str, b: &str| out.product.contains_key(&(a.to_string(), b.to_string()));
    for (k, e) in &p.alpha {
        if has_edge(e) && defined(&k.0, &k.1) && defined(&k.1, &k.0) {
            out.alpha.insert(k.clone(), e.clone());
        }
    }
    for (k, e) in &p.beta {
        let inner = |a: &str, b: &str| p.times(a, b).map(str::to_string);
        let ok = has_edge(e)
            && [&k.0, &k.1, &k.2].iter().all(|v| has(v))
            && inner(&k.1, &k.2).is_some_and(|bc| defined(&k.1, &k.2) && defined(&k.0, &bc))
            && inner(&k.0, &k.1).is_some_and(|ab| defined(&k.0, &k.1) && defined(&ab, &k.2));
        if ok {
            out.beta.insert(k.clone(), e.clone());
        }
    }
    for (v, e) in &p.unit_edges {
        if has_edge(e) && has(&p.unit) && defined(&p.unit, v) {
            out.unit_edges.insert(v.clone(), e.clone());
        }
    }
    for (k, e) in &p.left {
        if has_edge(e) && has_edge(&k.0) && has(&k.1) {
            let ge = sub.edge(&k.0).unwrap();
            if defined(&ge.src, &k.1) && defined(&ge.dst, &k.1) {
                out.left.insert(k.clone(), e.clone());
            }
        }
    }
    for (k, e) in &p.right {
        if has_edge(e) && has_edge(&k.1) && has(&k.0) {
            let ge = sub.edge(&k.1).unwrap();
            if defined(&k.0, &ge.src) && defined(&k.0, &ge.dst) {
                out.right.insert(k.clone(), e.clone());
            }
        }
    }
    out
}

pub fn restrict_graded<K: Field>(
    t: &GradedRepresentation<K>,
    sub: &crate::diagram::Diagram,
) -> GradedRepresentation<K> {
    GradedRepresentation {
        rep: t.rep.restrict(sub),
        tau: t
            .tau
            .iter()
            .filter(|((a, b), _)| sub.has_vertex(a) && sub.has_vertex(b))
            .map(|(k, m)| (k.clone(), m.clone()))
            .collect(),
    }
}
