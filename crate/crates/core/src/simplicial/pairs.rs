//! Relative cochains of pairs `Y ⊆ X`, connecting maps of triples, skeletal
//! filtrations and Čech complexes of covers.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Rationals, Q};

use super::cochain::{induced_map, CochainComplex, Cohomology};
use super::complex::{Complex, Simplex};

/// `C^k(X, Y)`: cochains on the `k`-simplices of `X` outside `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeCochains {
    pub complex: CochainComplex,
    pub bases: Vec<Vec<Simplex>>,
}

impl RelativeCochains {
    pub fn index(&self, s: &[usize]) -> Option<usize> {
        self.bases.get(s.len().checked_sub(1)?)?.binary_search_by(|t| t.as_slice().cmp(s)).ok()
    }

    pub fn basis(&self, k: usize) -> &[Simplex] {
        self.bases.get(k).map_or(&[], |b| b.as_slice())
    }
}

fn face_sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn relative_cochains(x: &Complex, y: &Complex) -> Result<RelativeCochains> {
    if !y.is_subcomplex_of(x) {
        return Err(Error::precondition("Y is not a subcomplex of X"));
    }
    let top = x.dim().map_or(0, |d| d + 1);
    let bases: Vec<Vec<Simplex>> =
        (0..top).map(|k| x.of_dim(k).into_iter().filter(|s| !y.contains(s)).collect()).collect();
    let mut d = Vec::new();
    for k in 0..top.saturating_sub(1) {
        let (src, dst) = (&bases[k], &bases[k + 1]);
        let mut m = Matrix::zeros(Q, dst.len(), src.len());
        for (r, t) in dst.iter().enumerate() {
            for j in 0..t.len() {
                let mut face = t.clone();
                face.remove(j);
                if let Ok(c) = src.binary_search(&face) {
                    m.set(r, c, crate::linalg::field::rat(face_sign(j)));
                }
            }
        }
        d.push(m);
    }
    let dims = bases.iter().map(Vec::len).collect();
    Ok(RelativeCochains { complex: CochainComplex::new(dims, d)?, bases })
}

pub fn relative_cohomology(x: &Complex, y: &Complex, i: usize) -> Result<Cohomology> {
    relative_cochains(x, y)?.complex.cohomology(i)
}

pub fn cohomology_dims(x: &Complex, y: &Complex) -> Result<Vec<usize>> {
    relative_cochains(x, y)?.complex.betti()
}

/// `H^j(X, Y) = 0` for every `j ≠ i`.
pub fn is_good_pair(x: &Complex, y: &Complex, i: usize) -> Result<bool> {
    Ok(cohomology_dims(x, y)?.iter().enumerate().all(|(j, &h)| j == i || h == 0))
}

/// A simplicial map given on vertices.
pub type VertexMap = BTreeMap<usize, usize>;

/// Image of a simplex with the sign of the sorting permutation, or `None` if it degenerates.
fn image(f: &VertexMap, s: &[usize]) -> Result<Option<(Simplex, i64)>> {
    let mut v: Vec<usize> = s
        .iter()
        .map(|x| f.get(x).copied().ok_or_else(|| Error::precondition(format!("vertex {x} is not mapped"))))
        .collect::<Result<_>>()?;
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return Ok(None);
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Ok(None);
    }
    Ok(Some((v, sign)))
}

/// Checks that `f` maps `X` into `X'` and `Y` into `Y'`.
pub fn check_pair_map(f: &VertexMap, (x, y): (&Complex, &Complex), (x2, y2): (&Complex, &Complex)) -> Result<()> {
    for s in x.simplices() {
        let v: Vec<usize> = s
            .iter()
            .map(|a| f.get(a).copied().ok_or_else(|| Error::precondition(format!("vertex {a} is not mapped"))))
            .collect::<Result<_>>()?;
        let mut set = v.clone();
        set.sort_unstable();
        set.dedup();
        if !x2.contains(&set) {
            return Err(Error::precondition(format!(
                "simplex {s:?} maps to {set:?}, which is not a simplex of the target"
            )));
        }
        if y.contains(s) && !y2.contains(&set) {
            return Err(Error::precondition(format!("simplex {s:?} of Y leaves Y'")));
        }
    }
    Ok(())
}

/// `f^* : C^k(X', Y') → C^k(X, Y)`.
pub fn pullback(f: &VertexMap, src: &RelativeCochains, dst: &RelativeCochains, k: usize) -> Result<Matrix<Rationals>> {
    let mut m = Matrix::zeros(Q, src.basis(k).len(), dst.basis(k).len());
    for (r, s) in src.basis(k).iter().enumerate() {
        if let Some((t, sign)) = image(f, s)? {
            if let Some(c) = dst.index(&t) {
                m.set(r, c, crate::linalg::field::rat(sign));
            }
        }
    }
    Ok(m)
}

/// `H^i(X', Y') → H^i(X, Y)` induced by `f : (X, Y) → (X', Y')`.
pub fn induced_cohomology_map(
    f: &VertexMap,
    (x, y): (&Complex, &Complex),
    (x2, y2): (&Complex, &Complex),
    i: usize,
) -> Result<Matrix<Rationals>> {
    check_pair_map(f, (x, y), (x2, y2))?;
    let (src, dst) = (relative_cochains(x, y)?, relative_cochains(x2, y2)?);
    let chain = pullback(f, &src, &dst, i)?;
    induced_map(&dst.complex.cohomology(i)?, &src.complex.cohomology(i)?, &chain)
}

/// Checks `X ⊇ Y ⊇ Z`.
fn check_triple(x: &Complex, y: &Complex, z: &Complex) -> Result<()> {
    if !z.is_subcomplex_of(y) || !y.is_subcomplex_of(x) {
        return Err(Error::precondition("expected a chain of subcomplexes X ⊇ Y ⊇ Z"));
    }
    Ok(())
}

/// The connecting map `H^i(Y, Z) → H^{i+1}(X, Y)`: extend a relative cocycle by
/// zero to `X`, apply the coboundary of `X` and read the result in `C^{i+1}(X, Y)`.
pub fn connecting_map(x: &Complex, y: &Complex, z: &Complex, i: usize) -> Result<Matrix<Rationals>> {
    check_triple(x, y, z)?;
    let yz = relative_cochains(y, z)?;
    let xz = relative_cochains(x, z)?;
    let xy = relative_cochains(x, y)?;
    let h_yz = yz.complex.cohomology(i)?;
    let h_xy = xy.complex.cohomology(i + 1)?;
    let d = xz.complex.differential(i);
    let mut out = Matrix::zeros(Q, h_xy.dim(), h_yz.dim());
    for (c, rep) in h_yz.reps.iter().enumerate() {
        let mut lift = vec![crate::linalg::field::rat(0); xz.basis(i).len()];
        for (s, v) in yz.basis(i).iter().zip(rep) {
            lift[xz.index(s).expect("simplices of Y outside Z are simplices of X outside Z")] = v.clone();
        }
        let image = d.apply(&lift)?;
        let mut restricted = vec![crate::linalg::field::rat(0); xy.basis(i + 1).len()];
        for (s, v) in xz.basis(i + 1).iter().zip(image) {
            match xy.index(s) {
                Some(k) => restricted[k] = v,
                None if v == crate::linalg::field::rat(0) => {}
                None => return Err(Error::consistency("coboundary of the lift does not vanish on Y")),
            }
        }
        for (r, x) in h_xy.class_of(&restricted)?.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Ok(out)
}

/// Exactness of `… → H^i(X,Y) → H^i(X,Z) → H^i(Y,Z) → H^{i+1}(X,Y) → …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
    /// `(term, dim, rank in, rank out)` along the sequence.
    pub terms: Vec<(String, usize, usize, usize)>,
    pub compositions_vanish: bool,
    pub exact: bool,
}

pub fn long_exact_sequence(x: &Complex, y: &Complex, z: &Complex) -> Result<LesReport> {
    check_triple(x, y, z)?;
    let xy = relative_cochains(x, y)?;
    let xz = relative_cochains(x, z)?;
    let yz = relative_cochains(y, z)?;
    let top = x.dim().map_or(0, |d| d + 1);
    // inclusion C(X,Y) → C(X,Z) and restriction C(X,Z) → C(Y,Z) in degree k
    let inclusion = |k: usize| {
        Matrix::from_fn(Q, xz.basis(k).len(), xy.basis(k).len(), |r, c| {
            crate::linalg::field::rat(i64::from(xz.basis(k)[r] == xy.basis(k)[c]))
        })
    };
    let restriction = |k: usize| {
        Matrix::from_fn(Q, yz.basis(k).len(), xz.basis(k).len(), |r, c| {
            crate::linalg::field::rat(i64::from(yz.basis(k)[r] == xz.basis(k)[c]))
        })
    };
    let mut maps: Vec<(String, Matrix<Rationals>)> = Vec::new();
    let mut names = Vec::new();
    for k in 0..top {
        let (hxy, hxz, hyz) = (xy.complex.cohomology(k)?, xz.complex.cohomology(k)?, yz.complex.cohomology(k)?);
        names.push(format!("H{k}(X,Y)"));
        maps.push((format!("H{k}(X,Y)"), induced_map(&hxy, &hxz, &inclusion(k))?));
        names.push(format!("H{k}(X,Z)"));
        maps.push((format!("H{k}(X,Z)"), induced_map(&hxz, &hyz, &restriction(k))?));
        names.push(format!("H{k}(Y,Z)"));
        maps.push((format!("H{k}(Y,Z)"), connecting_map(x, y, z, k)?));
    }
    let mut terms = Vec::new();
    let mut compositions_vanish = true;
    let mut exact = true;
    for (j, (name, out_map)) in maps.iter().enumerate() {
        let dim = out_map.cols();
        let rank_out = out_map.rank()?;
        let rank_in = if j == 0 { 0 } else { maps[j - 1].1.rank()? };
        if j > 0 {
            compositions_vanish &= out_map.mul(&maps[j - 1].1)?.is_zero();
        }
        exact &= rank_in + rank_out == dim;
        terms.push((name.clone(), dim, rank_in, rank_out));
    }
    Ok(LesReport { terms, compositions_vanish, exact: exact && compositions_vanish })
}

/// `F_j X` = `j`-skeleton, with `(F_j, F_{j-1}, j)` certified good.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtration {
    pub steps: Vec<Complex>,
    pub good: Vec<bool>,
}

impl Filtration {
    pub fn below(&self, j: usize) -> Complex {
        j.checked_sub(1).map_or_else(Complex::empty, |k| self.steps[k].clone())
    }
}

pub fn skeletal_filtration(x: &Complex) -> Result<Filtration> {
    let top = x.dim().map_or(0, |d| d + 1);
    let steps: Vec<Complex> = (0..top).map(|j| x.skeleton(j)).collect();
    let mut good = Vec::with_capacity(top);
    for j in 0..top {
        let below = j.checked_sub(1).map_or_else(Complex::empty, |k| steps[k].clone());
        good.push(is_good_pair(&steps[j], &below, j)?);
    }
    Ok(Filtration { steps, good })
}

/// `… → H^j(F_j, F_{j-1}) → H^{j+1}(F_{j+1}, F_j) → …` with connecting maps as differentials.
pub fn filtration_complex(filt: &Filtration) -> Result<CochainComplex> {
    if let Some(j) = filt.good.iter().position(|g| !g) {
        return Err(Error::precondition(format!("filtration step {j} is not a good pair")));
    }
    let n = filt.steps.len();
    let mut dims = Vec::with_capacity(n);
    for j in 0..n {
        dims.push(relative_cohomology(&filt.steps[j], &filt.below(j), j)?.dim());
    }
    let mut d = Vec::new();
    for j in 0..n.saturating_sub(1) {
        d.push(connecting_map(&filt.steps[j + 1], &filt.steps[j], &filt.below(j), j)?);
    }
    CochainComplex::new(dims, d)
}

/// The Čech double complex `C^{p,q} = ⊕_{i_0<…<i_p} C^q(U_{i_0…i_p}, Y ∩ U_{i_0…i_p})`
/// totalized with `D = δ + (−1)^p d`.
pub fn cech_total_complex(x: &Complex, y: &Complex, cover: &[Complex]) -> Result<CochainComplex> {
    if cover.iter().any(|u| !u.is_subcomplex_of(x)) {
        return Err(Error::precondition("a cover member is not a subcomplex of X"));
    }
    let union = cover.iter().fold(Complex::empty(), |a, u| a.union(u));
    if union != *x {
        return Err(Error::precondition("the cover does not cover X"));
    }
    let m = cover.len();
    // index sets by Čech degree, with their intersections and relative cochains
    let mut sets: Vec<Vec<(Vec<usize>, RelativeCochains)>> = Vec::new();
    for p in 0..m {
        let mut level = Vec::new();
        for idx in subsets(m, p + 1) {
            let u = idx.iter().skip(1).fold(cover[idx[0]].clone(), |a, &i| a.intersection(&cover[i]));
            let yu = u.intersection(y);
            level.push((idx, relative_cochains(&u, &yu)?));
        }
        sets.push(level);
    }
    let qmax = x.dim().map_or(0, |d| d + 1);
    let total_top = m + qmax;
    // offsets of the (p, I, q) blocks inside each total degree
    let mut layout: Vec<Vec<(usize, usize, usize, usize)>> = vec![Vec::new(); total_top]; // (p, set index, q, offset)
    let mut dims = vec![0usize; total_top];
    for (p, level) in sets.iter().enumerate() {
        for (si, (_, rc)) in level.iter().enumerate() {
            for q in 0..qmax {
                let n = rc.basis(q).len();
                if n > 0 {
                    layout[p + q].push((p, si, q, dims[p + q]));
                    dims[p + q] += n;
                }
            }
        }
    }
    let find = |deg: usize, p: usize, si: usize, q: usize| {
        layout.get(deg)?.iter().find(|b| b.0 == p && b.1 == si && b.2 == q).map(|b| b.3)
    };
    let mut d = Vec::new();
    for n in 0..total_top.saturating_sub(1) {
        let mut mat = Matrix::zeros(Q, dims[n + 1], dims[n]);
        for &(p, si, q, off) in &layout[n] {
            let (idx, rc) = &sets[p][si];
            // (−1)^p d
            if let Some(dst) = find(n + 1, p, si, q + 1) {
                let dq = rc.complex.differential(q);
                let s = if p % 2 == 0 { 1 } else { -1 };
                for r in 0..dq.rows() {
                    for c in 0..dq.cols() {
                        let v = dq.get(r, c);
                        if *v != crate::linalg::field::rat(0) {
                            mat.set(dst + r, off + c, v * crate::linalg::field::rat(s));
                        }
                    }
                }
            }
            // δ: restrict to every index set one larger containing idx
            if p + 1 < m {
                for (sj, (jdx, rc2)) in sets[p + 1].iter().enumerate() {
                    let Some(pos) = omitted(jdx, idx) else { continue };
                    let Some(dst) = find(n + 1, p + 1, sj, q) else { continue };
                    let sign = crate::linalg::field::rat(face_sign(pos));
                    for (r, s) in rc2.basis(q).iter().enumerate() {
                        let c = rc.index(s).expect("a smaller intersection is a subcomplex");
                        let cur = mat.get(dst + r, off + c).clone();
                        mat.set(dst + r, off + c, cur + sign.clone());
                    }
                }
            }
        }
        d.push(mat);
    }
    CochainComplex::new(dims, d)
}

/// Position of the single element of `big` missing from `small`, if `small ⊂ big` with one fewer element.
fn omitted(big: &[usize], small: &[usize]) -> Option<usize> {
    if big.len() != small.len() + 1 {
        return None;
    }
    (0..big.len()).find(|&k| big.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, v)| *v).eq(small.iter().copied()))
}

fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval() -> (Complex, Complex) {
        (Complex::simplex(1), Complex::from_maximal(&[[0], [1]]).unwrap())
    }

    #[test]
    fn interval_rel_boundary() {
        let (x, y) = interval();
        assert_eq!(cohomology_dims(&x, &y).unwrap(), vec![0, 1]);
        assert!(is_good_pair(&x, &y, 1).unwrap());
    }

    #[test]
    fn point_and_circle() {
        assert_eq!(cohomology_dims(&Complex::point(), &Complex::empty()).unwrap(), vec![1]);
        let c = Complex::simplex_boundary(2);
        assert_eq!(cohomology_dims(&c, &Complex::empty()).unwrap(), vec![1, 1]);
        assert!(!is_good_pair(&c, &Complex::empty(), 1).unwrap());
        assert!(is_good_pair(&c, &c, 3).unwrap());
    }

    #[test]
    fn connecting_map_of_interval() {
        let (x, y) = interval();
        let z = Complex::point();
        let d = connecting_map(&x, &y, &z, 0).unwrap();
        assert_eq!(d.shape(), (1, 1));
        assert!(d.is_invertible().unwrap());
        assert!(connecting_map(&x, &y, &y, 0).unwrap().is_zero());
        let les = long_exact_sequence(&x, &y, &z).unwrap();
        assert!(les.exact, "{les:?}");
    }

    #[test]
    fn skeleta_are_good() {
        for x in [Complex::simplex(2), Complex::point(), Complex::simplex_boundary(3)] {
            let f = skeletal_filtration(&x).unwrap();
            assert!(f.good.iter().all(|g| *g));
            assert_eq!(f.steps.len(), x.dim().unwrap() + 1);
        }
    }

    #[test]
    fn filtration_computes_cohomology() {
        let cases = [
            (Complex::simplex_boundary(2), vec![1, 1]),
            (Complex::simplex(2), vec![1, 0, 0]),
            (Complex::simplex_boundary(3), vec![1, 0, 1]),
        ];
        for (x, want) in cases {
            let c = filtration_complex(&skeletal_filtration(&x).unwrap()).unwrap();
            assert!(c.is_complex());
            assert_eq!(c.betti().unwrap(), want);
            assert_eq!(cohomology_dims(&x, &Complex::empty()).unwrap(), want);
        }
    }

    #[test]
    fn two_arc_cover_of_circle() {
        let x = Complex::simplex_boundary(2);
        let u = Complex::from_maximal(&[[0, 1], [1, 2]]).unwrap();
        let v = Complex::from_maximal(&[[0, 2]]).unwrap();
        let c = cech_total_complex(&x, &Complex::empty(), &[u, v]).unwrap();
        assert!(c.is_complex());
        assert_eq!(c.betti().unwrap()[..2], [1, 1]);
        assert!(c.betti().unwrap()[2..].iter().all(|&b| b == 0));
    }

    #[test]
    fn interval_halves_and_trivial_cover() {
        let x = Complex::from_maximal(&[[0, 1], [1, 2]]).unwrap();
        let halves = [Complex::from_maximal(&[[0, 1]]).unwrap(), Complex::from_maximal(&[[1, 2]]).unwrap()];
        let c = cech_total_complex(&x, &Complex::empty(), &halves).unwrap();
        assert_eq!(c.betti().unwrap().iter().sum::<usize>(), 1);
        let one = cech_total_complex(&x, &Complex::empty(), std::slice::from_ref(&x)).unwrap();
        assert_eq!(one.betti().unwrap()[..2], [1, 0]);
        assert!(cech_total_complex(&x, &Complex::empty(), &halves[..1]).is_err());
    }

    #[test]
    fn induced_maps_compose_contravariantly() {
        let c = Complex::simplex_boundary(2);
        let e = Complex::empty();
        let rot: VertexMap = [(0, 1), (1, 2), (2, 0)].into_iter().collect();
        let flip: VertexMap = [(0, 0), (1, 2), (2, 1)].into_iter().collect();
        let comp: VertexMap = rot.iter().map(|(&a, &b)| (a, flip[&b])).collect();
        let h = |f: &VertexMap| induced_cohomology_map(f, (&c, &e), (&c, &e), 1).unwrap();
        assert_eq!(h(&comp), h(&rot).mul(&h(&flip)).unwrap());
        assert_eq!(h(&flip), Matrix::from_ints(&[&[-1]]));
    }
}
