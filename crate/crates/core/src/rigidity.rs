//! Perfect pairings, the equations of their isometry groups, the closed-form
//! inverse `Y = A⁻¹XᵗA`, and finite monoids of invertible matrices.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

pub fn perfect_duality_check<K: Field>(a: &Matrix<K>) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("pairing matrix is {}x{}", a.rows(), a.cols())));
    }
    Ok(!a.field().is_zero(&a.det()?))
}

/// Variables `X_{st}` are numbered `s * n + t`; a monomial is the sorted list of its variables.
pub type Monomial = Vec<usize>;

/// A polynomial as a coefficient list in canonical monomial order (degree, then lexicographic).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<K: Field> {
    pub n: usize,
    pub terms: Vec<(Monomial, K::Elem)>,
}

fn monomial_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.cmp(b))
}

impl<K: Field> Polynomial<K> {
    fn from_map(field: &K, n: usize, map: BTreeMap<Monomial, K::Elem>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| monomial_order(&a.0, &b.0));
        Polynomial { n, terms }
    }

    /// Scaled so that the leading coefficient is one; the zero polynomial is unchanged.
    pub fn monic(&self, f: &K) -> Self {
        let Some((_, lead)) = self.terms.first() else { return self.clone() };
        let inv = f.inv(lead).expect("leading coefficient is nonzero");
        Polynomial { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(c, &inv))).collect() }
    }

    pub fn evaluate(&self, field: &K, x: &Matrix<K>) -> K::Elem {
        self.terms.iter().fold(field.zero(), |acc, (m, c)| {
            let v = m.iter().fold(c.clone(), |p, &var| field.mul(&p, x.get(var / self.n, var % self.n)));
            field.add(&acc, &v)
        })
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        if m.is_empty() {
            return "1".into();
        }
        let name = |v: usize| {
            let (s, t) = (v / self.n + 1, v % self.n + 1);
            if self.n < 10 {
                format!("X{s}{t}")
            } else {
                format!("X{s}_{t}")
            }
        };
        let mut parts = Vec::new();
        let mut i = 0;
        while i < m.len() {
            let j = m[i..].iter().take_while(|&&v| v == m[i]).count();
            parts.push(if j == 1 { name(m[i]) } else { format!("{}^{j}", name(m[i])) });
            i += j;
        }
        parts.join("*")
    }

    pub fn render(&self, field: &K) -> Vec<(String, String)> {
        self.terms.iter().map(|(m, c)| (self.render_monomial(m), field.render(c))).collect()
    }
}

/// The entries of `XᵗAX − A`, one polynomial per `(i, j)` in row-major order.
pub fn isometry_equations<K: Field>(a: &Matrix<K>) -> Result<Vec<Polynomial<K>>> {
    if !perfect_duality_check(a)? {
        return Err(Error::precondition("the pairing is degenerate"));
    }
    let f = a.field();
    let n = a.rows();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut map: BTreeMap<Monomial, K::Elem> = BTreeMap::new();
            for r in 0..n {
                for r2 in 0..n {
                    let c = a.get(r, r2);
                    if f.is_zero(c) {
                        continue;
                    }
                    let mut m = vec![r * n + i, r2 * n + j];
                    m.sort_unstable();
                    let e = map.entry(m).or_insert_with(|| f.zero());
                    *e = f.add(e, c);
                }
            }
            let e = map.entry(vec![]).or_insert_with(|| f.zero());
            *e = f.sub(e, a.get(i, j));
            out.push(Polynomial::from_map(f, n, map));
        }
    }
    Ok(out)
}

/// Equations distinct up to a nonzero scalar, in order of first appearance.
pub fn distinct_equations<K: Field>(field: &K, eqs: &[Polynomial<K>]) -> Vec<Polynomial<K>> {
    let mut out: Vec<Polynomial<K>> = Vec::new();
    let mut seen: Vec<Polynomial<K>> = Vec::new();
    for e in eqs {
        let m = e.monic(field);
        if !seen.contains(&m) {
            seen.push(m);
            out.push(e.clone());
        }
    }
    out
}

/// `Y = A⁻¹ Xᵗ A`.
pub fn isometry_inverse<K: Field>(a: &Matrix<K>, x: &Matrix<K>) -> Result<Matrix<K>> {
    let b = a.inverse_or_err("pairing")?;
    b.mul(&x.transpose())?.mul(a)
}

pub fn is_isometry<K: Field>(a: &Matrix<K>, x: &Matrix<K>) -> Result<bool> {
    Ok(x.transpose().mul(a)?.mul(x)? == *a)
}

/// Isometries from the Cayley transform `(I − S)⁻¹(I + S)` of random elements
/// `S` of the Lie algebra `{S : SᵗA + AS = 0}`.
pub fn sample_isometries<K: Field, R: Rng>(a: &Matrix<K>, rng: &mut R, count: usize) -> Result<Vec<Matrix<K>>> {
    let f = a.field().clone();
    let n = a.rows();
    // row (i, j) of the linear map S ↦ SᵗA + AS, column (k, l) ↔ S_kl
    let lin = Matrix::from_fn(f.clone(), n * n, n * n, |row, col| {
        let (i, j) = (row / n, row % n);
        let (k, l) = (col / n, col % n);
        let mut v = f.zero();
        if l == i {
            v = f.add(&v, a.get(k, j));
        }
        if l == j {
            v = f.add(&v, a.get(i, k));
        }
        v
    });
    let lie = lin.kernel()?;
    let id = Matrix::identity(f.clone(), n);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 20 + 20 {
        attempts += 1;
        let coeffs: Vec<K::Elem> = (0..lie.dim()).map(|_| f.from_int(rng.gen_range(-2..=2))).collect();
        let s = lie.combine(&coeffs);
        let s = Matrix::new(f.clone(), n, n, s)?;
        let Some(inv) = id.sub(&s)?.inverse()? else { continue };
        out.push(inv.mul(&id.add(&s)?)?);
    }
    Ok(out)
}

pub fn orthogonal_sum<K: Field>(a1: &Matrix<K>, a2: &Matrix<K>) -> Matrix<K> {
    Matrix::block_diag(a1.field().clone(), &[a1.clone(), a2.clone()])
}

/// `[[0, Q], [Qᵗ, 0]]` on `V ⊕ W` for `Q : V ⊗ W → K`, with perfectness re-verified.
pub fn symmetric_extension<K: Field>(q: &Matrix<K>) -> Result<(Matrix<K>, bool)> {
    let f = q.field();
    let (v, w) = q.shape();
    let top = Matrix::zeros(f.clone(), v, v).hstack(q)?;
    let bottom = q.transpose().hstack(&Matrix::zeros(f.clone(), w, w))?;
    let m = top.vstack(&bottom)?;
    let perfect = perfect_duality_check(&m)?;
    Ok((m, perfect))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidVerdict {
    pub is_group: bool,
    /// Index of the inverse of each member, when found.
    pub inverses: Vec<Option<usize>>,
    /// Smallest `k ≥ 1` with `g^k = I`, so that `g⁻¹ = g^{k-1}`.
    pub orders: Vec<Option<usize>>,
    /// Steps until `g^k M` stops shrinking.
    pub stabilized_at: Vec<usize>,
    /// `(a, b)` with `ab` outside the set.
    pub closure_failure: Option<(usize, usize)>,
    pub has_identity: bool,
}

fn index_of<K: Field>(m: &[Matrix<K>], x: &Matrix<K>) -> Option<usize> {
    m.iter().position(|y| y == x)
}

pub fn monoid_is_group<K: Field>(m: &[Matrix<K>]) -> Result<MonoidVerdict> {
    let n = m.len();
    for (i, g) in m.iter().enumerate() {
        if !g.is_square() || !g.is_invertible()? {
            return Err(Error::precondition(format!("member {i} is not invertible")));
        }
    }
    let mut table = vec![0usize; n * n];
    let mut closure_failure = None;
    'outer: for a in 0..n {
        for b in 0..n {
            match index_of(m, &m[a].mul(&m[b])?) {
                Some(c) => table[a * n + b] = c,
                None => {
                    closure_failure = Some((a, b));
                    break 'outer;
                }
            }
        }
    }
    let identity = m.first().and_then(|g| index_of(m, &Matrix::identity(g.field().clone(), g.rows())));
    let mut verdict = MonoidVerdict {
        is_group: false,
        inverses: vec![None; n],
        orders: vec![None; n],
        stabilized_at: vec![0; n],
        closure_failure,
        has_identity: identity.is_some(),
    };
    let (None, Some(e)) = (closure_failure, identity) else { return Ok(verdict) };
    for g in 0..n {
        // g^k M as index sets, until it stops changing
        let mut current: BTreeSet<usize> = (0..n).collect();
        let mut k = 0;
        loop {
            let next: BTreeSet<usize> = current.iter().map(|&x| table[g * n + x]).collect();
            k += 1;
            if next == current {
                break;
            }
            current = next;
        }
        verdict.stabilized_at[g] = k;
        // g·h = e for some h in the stable set
        verdict.inverses[g] = current.iter().copied().find(|&h| table[g * n + h] == e && table[h * n + g] == e);
        let mut p = g;
        for k in 1..=n {
            if p == e {
                verdict.orders[g] = Some(k);
                break;
            }
            p = table[p * n + g];
        }
    }
    verdict.is_group = verdict.inverses.iter().all(Option::is_some);
    Ok(verdict)
}

/// The monoid generated by `gens` and the identity, or `None` if it exceeds `cap` elements.
pub fn generate_monoid<K: Field>(gens: &[Matrix<K>], cap: usize) -> Result<Option<Vec<Matrix<K>>>> {
    let Some(first) = gens.first() else { return Ok(None) };
    let mut out = vec![Matrix::identity(first.field().clone(), first.rows())];
    let mut frontier = 0;
    while frontier < out.len() {
        let x = out[frontier].clone();
        frontier += 1;
        for g in gens {
            let y = x.mul(g)?;
            if index_of(&out, &y).is_none() {
                out.push(y);
                if out.len() > cap {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(out))
}

/// A random `n × n` signed permutation matrix.
pub fn random_signed_permutation<K: Field, R: Rng>(field: &K, rng: &mut R, n: usize) -> Matrix<K> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut m = Matrix::zeros(field.clone(), n, n);
    for (i, &j) in perm.iter().enumerate() {
        let s = if rng.gen_bool(0.5) { field.one() } else { field.neg(&field.one()) };
        m.set(i, j, s);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::{rat, ratio};
    use crate::linalg::{Matrix, Rationals, Q};
    use rand::SeedableRng;

    fn m(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_ints(rows)
    }

    #[test]
    fn perfect_pairings() {
        assert!(perfect_duality_check(&m(&[&[1, 0], &[0, 1]])).unwrap());
        assert!(perfect_duality_check(&m(&[&[0, 1], &[-1, 0]])).unwrap());
        assert!(!perfect_duality_check(&m(&[&[1, 1], &[1, 1]])).unwrap());
    }

    #[test]
    fn equations_of_small_forms() {
        let e = isometry_equations(&m(&[&[1]])).unwrap();
        assert_eq!(e[0].render(&Q), vec![("X11^2".to_string(), "1".to_string()), ("1".to_string(), "-1".to_string())]);
        let e = isometry_equations(&m(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(distinct_equations(&Q, &e).len(), 3);
        // XᵗJX = J gives det X − 1 at (1,2) and its negative at (2,1)
        let j = isometry_equations(&m(&[&[0, 1], &[-1, 0]])).unwrap();
        let d: Vec<_> = distinct_equations(&Q, &j).into_iter().filter(|p| !p.terms.is_empty()).collect();
        assert_eq!(d.len(), 1);
        // (1,2): X11 X12 + X21 X22
        assert_eq!(
            e[1].render(&Q),
            vec![("X11*X12".to_string(), "1".to_string()), ("X21*X22".to_string(), "1".to_string())]
        );
        assert!(isometry_equations(&m(&[&[1, 1], &[1, 1]])).is_err());
    }

    #[test]
    fn closed_form_inverse() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert_eq!(isometry_inverse(&id, &id).unwrap(), id);

        let x = Matrix::from_rows(Q, vec![vec![ratio(3, 5), ratio(-4, 5)], vec![ratio(4, 5), ratio(3, 5)]], 2).unwrap();
        assert!(is_isometry(&id, &x).unwrap());
        let y = isometry_inverse(&id, &x).unwrap();
        assert_eq!(y, x.transpose());
        assert!(y.mul(&x).unwrap().is_identity());

        let a = m(&[&[0, 1], &[-1, 0]]);
        let x = m(&[&[1, 1], &[0, 1]]);
        assert!(is_isometry(&a, &x).unwrap());
        let y = isometry_inverse(&a, &x).unwrap();
        assert_eq!(y, m(&[&[1, -1], &[0, 1]]));
        assert!(y.mul(&x).unwrap().is_identity() && x.mul(&y).unwrap().is_identity());
    }

    #[test]
    fn cayley_samples_solve_the_equations() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let a = m(&[&[2, 1, 0], &[0, 1, 0], &[1, 0, 3]]);
        let eqs = isometry_equations(&a).unwrap();
        let xs = sample_isometries(&a, &mut rng, 5).unwrap();
        assert_eq!(xs.len(), 5);
        for x in &xs {
            assert!(eqs.iter().all(|e| e.evaluate(&Q, x) == rat(0)));
            let y = isometry_inverse(&a, x).unwrap();
            assert!(eqs.iter().all(|e| e.evaluate(&Q, &y) == rat(0)));
            assert!(y.mul(x).unwrap().is_identity());
        }
    }

    #[test]
    fn rotation_group() {
        let r = m(&[&[0, -1], &[1, 0]]);
        let g = generate_monoid(&[r], 24).unwrap().unwrap();
        assert_eq!(g.len(), 4);
        let v = monoid_is_group(&g).unwrap();
        assert!(v.is_group);
        // the generator is g[1]; its inverse is its third power
        assert_eq!(v.orders[1], Some(4));
        assert_eq!(g[v.inverses[1].unwrap()], g[1].mul(&g[1]).unwrap().mul(&g[1]).unwrap());
    }

    #[test]
    fn identity_alone_and_idempotents() {
        let id = m(&[&[1, 0], &[0, 1]]);
        assert!(monoid_is_group(std::slice::from_ref(&id)).unwrap().is_group);
        assert!(monoid_is_group(&[id, m(&[&[1, 0], &[0, 0]])]).is_err());
    }

    #[test]
    fn missing_product_is_reported() {
        let id = m(&[&[1, 0], &[0, 1]]);
        let v = monoid_is_group(&[id, m(&[&[2, 0], &[0, 1]])]).unwrap();
        assert!(!v.is_group);
        assert_eq!(v.closure_failure, Some((1, 1)));
    }

    #[test]
    fn sums_and_symmetric_extension() {
        let a = m(&[&[0, 1], &[-1, 0]]);
        let b = m(&[&[1, 1], &[1, 1]]);
        assert!(perfect_duality_check(&orthogonal_sum(&a, &a)).unwrap());
        assert!(!perfect_duality_check(&orthogonal_sum(&a, &b)).unwrap());
        let (s, perfect) = symmetric_extension(&m(&[&[1, 2], &[3, 4]])).unwrap();
        assert!(perfect && s == s.transpose());
        let (_, perfect) = symmetric_extension(&m(&[&[1, 2]])).unwrap();
        assert!(!perfect);
    }
}
