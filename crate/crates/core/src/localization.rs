//! Localization of a graded diagram at an even vertex of rank one, truncated
//! to twists `|n| ≤ N`, and the transition maps given by multiplication by χ.

use crate::bialgebra::hom_comultiplication;
use crate::diagram::{Diagram, GradedDiagram, GradedRepresentation, ProductStructure, Representation};
use crate::endo::{hom_space, restriction_matrix, IntertwinerSpace};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};

pub fn twisted(v: &str, n: i64) -> String {
    format!("{v}@{n}")
}

pub fn twist_edge(f: &str, n: i64) -> String {
    format!("twist_{f}@{n}")
}

/// The truncated localization together with the data used to build it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedDiagram {
    pub graded: GradedDiagram,
    pub base: GradedDiagram,
    pub f0: String,
    pub bound: i64,
    /// `(f, n)` for every twist edge `(f×f0)(n) → f(n+1)`.
    pub twists: Vec<(String, i64)>,
}

fn levels(bound: i64) -> impl Iterator<Item = i64> + Clone {
    -bound..=bound
}

pub fn localize_diagram(base: &GradedDiagram, f0: &str, bound: usize) -> Result<LocalizedDiagram> {
    let d = &base.diagram;
    let p = &base.product;
    match d.grade(f0) {
        None => return Err(Error::precondition(format!("{f0} is not a vertex"))),
        Some(true) => {
            return Err(Error::precondition(format!(
                "{f0} is odd; localize at its square {} instead",
                p.times(f0, f0).unwrap_or("f0×f0")
            )))
        }
        Some(false) => {}
    }
    let n_max = bound as i64;
    let lv = levels(n_max);
    let mut out = Diagram::new();
    for (v, g) in d.vertices() {
        for n in lv.clone() {
            out.add_bare_vertex(&twisted(v, n), g)?;
        }
    }
    for (e, edge) in d.edges() {
        for n in lv.clone() {
            let (s, t) = (twisted(&edge.src, n), twisted(&edge.dst, n));
            if edge.identity {
                out.add_identity_edge(&twisted(e, n), &s)?;
            } else {
                out.add_edge(&twisted(e, n), &s, &t)?;
            }
        }
    }
    let mut twists = Vec::new();
    for (v, _) in d.vertices() {
        let Some(vf0) = p.times(v, f0) else { continue };
        for n in -n_max..n_max {
            out.add_edge(&twist_edge(v, n), &twisted(vf0, n), &twisted(v, n + 1))?;
            twists.push((v.to_string(), n));
        }
    }

    let inside = |n: i64| n.abs() <= n_max;
    let mut prod = ProductStructure { unit: twisted(&p.unit, 0), ..Default::default() };
    for ((a, b), ab) in &p.product {
        for n in lv.clone() {
            for m in lv.clone() {
                if inside(n + m) {
                    prod.product.insert((twisted(a, n), twisted(b, m)), twisted(ab, n + m));
                }
            }
        }
    }
    for ((a, b), e) in &p.alpha {
        for n in lv.clone() {
            for m in lv.clone() {
                if inside(n + m) {
                    prod.alpha.insert((twisted(a, n), twisted(b, m)), twisted(e, n + m));
                }
            }
        }
    }
    for ((a, b, c), e) in &p.beta {
        for n in lv.clone() {
            for m in lv.clone() {
                for k in lv.clone() {
                    if inside(n + m) && inside(m + k) && inside(n + m + k) {
                        prod.beta.insert((twisted(a, n), twisted(b, m), twisted(c, k)), twisted(e, n + m + k));
                    }
                }
            }
        }
    }
    for (v, e) in &p.unit_edges {
        for n in lv.clone() {
            prod.unit_edges.insert(twisted(v, n), twisted(e, n));
        }
    }
    for ((gamma, g), e) in &p.left {
        for n in lv.clone() {
            for m in lv.clone() {
                if inside(n + m) {
                    prod.left.insert((twisted(gamma, n), twisted(g, m)), twisted(e, n + m));
                }
            }
        }
    }
    for ((f, gamma), e) in &p.right {
        for n in lv.clone() {
            for m in lv.clone() {
                if inside(n + m) {
                    prod.right.insert((twisted(f, n), twisted(gamma, m)), twisted(e, n + m));
                }
            }
        }
    }
    Ok(LocalizedDiagram {
        graded: GradedDiagram { diagram: out, product: prod },
        base: base.clone(),
        f0: f0.to_string(),
        bound: n_max,
        twists,
    })
}

/// Extends `T` to the localization; requires `dim T(f0) = 1`.
///
/// With the basis `ℓ^{⊗n}` of `T(f0)^{⊗n}` (dual basis for `n < 0`) every
/// canonical identification is the identity, so `T(f(n))` has the dimension of
/// `T(f)` and twist edges carry `τ_{f,f0}`.
pub fn extend_representation<K: Field>(
    loc: &LocalizedDiagram,
    t: &GradedRepresentation<K>,
) -> Result<GradedRepresentation<K>> {
    let f0 = &loc.f0;
    if t.rep.dim(f0) != 1 {
        return Err(Error::precondition(format!("T({f0}) has dimension {}, expected 1", t.rep.dim(f0))));
    }
    let field = t.rep.field.clone();
    let mut rep = Representation::new(field);
    for (v, _) in loc.base.diagram.vertices() {
        for n in levels(loc.bound) {
            rep.dims.insert(twisted(v, n), t.rep.dim(v));
        }
    }
    for (e, _) in loc.base.diagram.edges() {
        let m = t.rep.mat(e)?;
        for n in levels(loc.bound) {
            rep.mats.insert(twisted(e, n), m.clone());
        }
    }
    for (v, n) in &loc.twists {
        rep.mats.insert(twist_edge(v, *n), t.tau(v, f0)?.clone());
    }
    let mut tau = std::collections::BTreeMap::new();
    for ((a, b), ab) in &loc.graded.product.product {
        let (base_a, base_b) = (untwist(a), untwist(b));
        let m = t
            .tau(base_a, base_b)
            .map_err(|_| Error::precondition(format!("no tau for ({base_a}, {base_b}) under {ab}")))?;
        tau.insert((a.clone(), b.clone()), m.clone());
    }
    Ok(GradedRepresentation { rep, tau })
}

fn untwist(v: &str) -> &str {
    v.rsplit_once('@').map_or(v, |(base, _)| base)
}

/// Dual of `S : End(T|F') → End(T|F)`, `(Sa)_f = τ_{f,f0} a_{f×f0} τ_{f,f0}⁻¹`, read in `End(T(f)) ⊗ End(T(f0)) = End(T(f))`.
pub fn twist_restriction<K: Field>(
    gd: &GradedDiagram,
    t: &GradedRepresentation<K>,
    f0: &str,
    small: &IntertwinerSpace<K>,
    large: &IntertwinerSpace<K>,
) -> Result<Matrix<K>> {
    let f = &small.field;
    let mut out = Matrix::zeros(f.clone(), small.dim(), large.dim());
    let parts: Vec<(usize, usize, Matrix<K>, Matrix<K>)> = small
        .layout
        .vertices
        .iter()
        .enumerate()
        .map(|(b, v)| {
            let vf0 = gd
                .product
                .times(v, f0)
                .filter(|x| large.subdiagram.has_vertex(x))
                .ok_or_else(|| Error::precondition(format!("{v}×{f0} is not in F'")))?;
            let tau = t.tau(v, f0)?.clone();
            let inv = tau.inverse_or_err("tau")?;
            Ok((b, large.layout.block(vf0).unwrap(), tau, inv))
        })
        .collect::<Result<_>>()?;
    for col in 0..large.dim() {
        let v = large.basis.vector(col);
        let blocks: Vec<Matrix<K>> = parts
            .iter()
            .map(|(_, lb, tau, inv)| tau.mul(&large.layout.component(f, &v, *lb))?.mul(inv))
            .collect::<Result<_>>()?;
        let coords = small.coordinates(&blocks).ok_or_else(|| {
            Error::consistency(format!("the twisted restriction of basis element {col} is not an endomorphism"))
        })?;
        for (i, x) in coords.into_iter().enumerate() {
            out.set(i, col, x);
        }
    }
    Ok(out)
}

/// One transition `A(F) → A(F')` compared with multiplication by χ.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionReport<K: Field> {
    /// χ in the dual basis of `End(T|{f0})`.
    pub chi: Vec<K::Elem>,
    /// The coalgebra transition `A(F) → A(F')`, the transpose of the twisted restriction.
    pub transition: Matrix<K>,
    /// `x ↦ x·χ` computed with the bialgebra multiplication `A(G)⊗A(G) → A(F')`, `G = F ∪ {f0}`.
    pub times_chi: Matrix<K>,
    /// Same with χ as the left factor.
    pub chi_times: Matrix<K>,
    pub agrees: bool,
}

pub fn chi_and_transitions<K: Field, S: AsRef<str>>(
    gd: &GradedDiagram,
    t: &GradedRepresentation<K>,
    f0: &str,
    small: &[S],
    large: &[S],
) -> Result<TransitionReport<K>> {
    let d = &gd.diagram;
    if d.grade(f0) != Some(false) {
        return Err(Error::precondition(format!("{f0} must be an even vertex")));
    }
    if t.rep.dim(f0) != 1 {
        return Err(Error::precondition(format!("T({f0}) must have dimension 1")));
    }
    let f = t.rep.field.clone();
    let mut g: Vec<String> = small.iter().map(|s| s.as_ref().to_string()).collect();
    if !g.iter().any(|v| v == f0) {
        g.push(f0.to_string());
    }
    let sp_small = hom_space(d, &t.rep, &t.rep, small)?;
    let sp_g = hom_space(d, &t.rep, &t.rep, &g)?;
    let sp_f0 = hom_space(d, &t.rep, &t.rep, &[f0])?;
    let sp_large = hom_space(d, &t.rep, &t.rep, large)?;

    let s = twist_restriction(gd, t, f0, &sp_small, &sp_large)?;
    let transition = s.transpose();

    // End(T|{f0}) is the scalars; its basis vector is the identity, so χ = 1 in the dual basis.
    if sp_f0.dim() != 1 || !f.is_one(&sp_f0.basis.vector(0)[0]) {
        return Err(Error::consistency(format!("End(T|{{{f0}}}) is not spanned by the identity")));
    }
    let chi = vec![f.one()];
    let lift_x = restriction_matrix(&sp_small, &sp_g)?.transpose();
    let lift_chi = restriction_matrix(&sp_f0, &sp_g)?.transpose();
    let chi_g = lift_chi.apply(&chi)?;
    let mult = hom_comultiplication(gd, t, t, &sp_g, &sp_large)?.transpose();
    let ng = sp_g.dim();
    let mut times_chi = Matrix::zeros(f.clone(), sp_large.dim(), sp_small.dim());
    let mut chi_times = times_chi.clone();
    for col in 0..sp_small.dim() {
        let mut e = vec![f.zero(); sp_small.dim()];
        e[col] = f.one();
        let x = lift_x.apply(&e)?;
        let mut xc = vec![f.zero(); ng * ng];
        let mut cx = vec![f.zero(); ng * ng];
        for i in 0..ng {
            for j in 0..ng {
                xc[i * ng + j] = f.mul(&x[i], &chi_g[j]);
                cx[i * ng + j] = f.mul(&chi_g[i], &x[j]);
            }
        }
        for (row, (a, b)) in mult.apply(&xc)?.into_iter().zip(mult.apply(&cx)?).enumerate() {
            times_chi.set(row, col, a);
            chi_times.set(row, col, b);
        }
    }
    let agrees = transition == times_chi && transition == chi_times;
    Ok(TransitionReport { chi, transition, times_chi, chi_times, agrees })
}

/// Levelwise facts about a localized representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub twists_invertible: bool,
    /// `dim End(T|F(n))` for each level `n`, in increasing order of `n`.
    pub level_dims: Vec<(i64, usize)>,
    pub dims_constant: bool,
}

pub fn level_report<K: Field, S: AsRef<str>>(
    loc: &LocalizedDiagram,
    t: &GradedRepresentation<K>,
    base_vertices: &[S],
) -> Result<LevelReport> {
    let mut twists_invertible = true;
    for (v, n) in &loc.twists {
        twists_invertible &= t.rep.mat(&twist_edge(v, *n))?.is_invertible()?;
    }
    let mut level_dims = Vec::new();
    for n in levels(loc.bound) {
        let vs: Vec<String> = base_vertices.iter().map(|v| twisted(v.as_ref(), n)).collect();
        level_dims.push((n, hom_space(&loc.graded.diagram, &t.rep, &t.rep, &vs)?.dim()));
    }
    let dims_constant = level_dims.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(LevelReport { twists_invertible, level_dims, dims_constant })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{validate_graded, GradedCheckOptions, SignRule};
    use crate::fixtures::{tensor_representation, tensor_words, LeafDiagram, LeafRep, TensorFixture};
    use crate::linalg::{Rationals, Q};

    fn fixture(depth: usize) -> (TensorFixture, GradedRepresentation<Rationals>) {
        let ld = LeafDiagram {
            leaves: vec![("a".into(), false), ("l".into(), false), ("o".into(), true)],
            edges: vec![("g".into(), "a".into(), "a".into()), ("h".into(), "a".into(), "l".into())],
        };
        let leaf = LeafRep {
            dims: vec![2, 1, 1],
            mats: vec![Matrix::from_ints(&[&[2, 1], &[0, 2]]), Matrix::from_ints(&[&[0, 3]])],
        };
        let fx = tensor_words(&ld, depth, SignRule::Literal).unwrap();
        let t = tensor_representation(&fx, &Q, &leaf).unwrap();
        (fx, t)
    }

    #[test]
    fn bound_zero_is_a_copy() {
        let (fx, _) = fixture(1);
        let loc = localize_diagram(&fx.graded, "l", 0).unwrap();
        assert_eq!(loc.graded.diagram.num_vertices(), fx.graded.diagram.num_vertices());
        assert!(loc.twists.is_empty());
        assert!(loc.graded.diagram.has_vertex("(a*l)@0"));
    }

    #[test]
    fn unit_and_f0_at_bound_one() {
        let ld = LeafDiagram { leaves: vec![("l".into(), false)], edges: vec![] };
        let fx = tensor_words(&ld, 0, SignRule::Literal).unwrap();
        let loc = localize_diagram(&fx.graded, "l", 1).unwrap();
        let want: Vec<String> = ["1@-1", "1@0", "1@1", "l@-1", "l@0", "l@1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(loc.graded.diagram.vertex_ids(), want);
    }

    #[test]
    fn odd_and_wide_f0_are_rejected() {
        let (fx, t) = fixture(1);
        let e = localize_diagram(&fx.graded, "o", 1).unwrap_err();
        assert!(e.to_string().contains("(o*o)"), "{e}");
        let loc = localize_diagram(&fx.graded, "a", 1).unwrap();
        assert!(extend_representation(&loc, &t).is_err());
    }

    #[test]
    fn extension_is_graded_and_levels_agree() {
        let (fx, t) = fixture(1);
        let loc = localize_diagram(&fx.graded, "l", 1).unwrap();
        let tl = extend_representation(&loc, &t).unwrap();
        let r = validate_graded(&loc.graded, &tl, GradedCheckOptions::default());
        assert!(r.is_ok(), "{r}");
        // the edge into f0 carries its scalar at every level
        for n in -1..=1 {
            assert_eq!(tl.rep.mat(&twisted("h", n)).unwrap(), &Matrix::from_ints(&[&[0, 3]]));
        }
        let lv = level_report(&loc, &tl, fx.level(0)).unwrap();
        assert!(lv.twists_invertible && lv.dims_constant, "{lv:?}");
    }

    #[test]
    fn transitions_are_multiplication_by_chi() {
        let (fx, t) = fixture(2);
        let r = chi_and_transitions(&fx.graded, &t, "l", fx.level(0), fx.level(1)).unwrap();
        assert!(r.agrees);
        let unit = chi_and_transitions(&fx.graded, &t, "l", &["1".to_string()], fx.level(1)).unwrap();
        assert!(unit.agrees);
        let f0 = chi_and_transitions(&fx.graded, &t, "l", &["l"], &["l", "(l*l)"]).unwrap();
        assert!(f0.agrees);
        // End(T|F') has basis (id on (l*l), id on l); the transition picks the product coordinate
        assert_eq!(f0.transition, Matrix::from_ints(&[&[1], &[0]]));

        // two steps compose to multiplication by χ twice
        let second = chi_and_transitions(&fx.graded, &t, "l", fx.level(1), fx.level(2)).unwrap();
        assert!(second.agrees);
        let two = second.transition.mul(&r.transition).unwrap();
        assert_eq!(two, second.times_chi.mul(&r.times_chi).unwrap());
        assert!(!two.is_zero());
    }
}
