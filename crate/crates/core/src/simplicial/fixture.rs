//! Diagrams whose vertices are simplicial pairs `(X, Y, i)` and whose
//! representation is relative cohomology.

use std::collections::BTreeMap;

use crate::diagram::{Diagram, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Rationals, Q};

use super::complex::Complex;
use super::pairs::{connecting_map, induced_cohomology_map, relative_cohomology, VertexMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSpec {
    pub name: String,
    pub x: Complex,
    pub y: Complex,
    pub degree: usize,
}

/// A simplicial map of pairs `domain → codomain`; its edge runs `codomain → domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapSpec {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub vertex_map: VertexMap,
}

/// A chain `X ⊇ Y ⊇ Z` given as the pairs `lower = (Y, Z, i)` and `upper = (X, Y, i+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSpec {
    pub name: String,
    pub lower: String,
    pub upper: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairFixture {
    pub diagram: Diagram,
    pub rep: Representation<Rationals>,
}

pub fn make_diagram_fixture(pairs: &[PairSpec], maps: &[MapSpec], triples: &[TripleSpec]) -> Result<PairFixture> {
    let mut d = Diagram::new();
    let mut rep = Representation::new(Q);
    let mut by_name = BTreeMap::new();
    for p in pairs {
        if !p.y.is_subcomplex_of(&p.x) {
            return Err(Error::precondition(format!("pair {}: Y is not a subcomplex of X", p.name)));
        }
        d.add_vertex(&p.name, p.degree % 2 == 1)?;
        rep.dims.insert(p.name.clone(), relative_cohomology(&p.x, &p.y, p.degree)?.dim());
        by_name.insert(p.name.as_str(), p);
    }
    let get = |n: &str| by_name.get(n).copied().ok_or_else(|| Error::precondition(format!("unknown pair {n}")));
    for m in maps {
        let (dom, cod) = (get(&m.domain)?, get(&m.codomain)?);
        if dom.degree != cod.degree {
            return Err(Error::precondition(format!(
                "map {} joins pairs of degrees {} and {}",
                m.name, dom.degree, cod.degree
            )));
        }
        let mat = induced_cohomology_map(&m.vertex_map, (&dom.x, &dom.y), (&cod.x, &cod.y), dom.degree)
            .map_err(|e| Error::precondition(format!("map {}: {e}", m.name)))?;
        d.add_edge(&m.name, &cod.name, &dom.name)?;
        rep.mats.insert(m.name.clone(), mat);
    }
    for t in triples {
        let (lo, up) = (get(&t.lower)?, get(&t.upper)?);
        if up.y != lo.x || up.degree != lo.degree + 1 {
            return Err(Error::precondition(format!(
                "triple {}: expected ({}, {}) to be (Y, Z, i) and (X, Y, i+1)",
                t.name, lo.name, up.name
            )));
        }
        let mat = connecting_map(&up.x, &up.y, &lo.y, lo.degree)?;
        d.add_edge(&t.name, &lo.name, &up.name)?;
        rep.mats.insert(t.name.clone(), mat);
    }
    rep.fill_identities(&d);
    Ok(PairFixture { diagram: d, rep })
}

/// `T'(e) = P_dst T(e) P_src⁻¹` for invertible `P_v`; missing vertices keep the identity.
pub fn conjugate<K: Field>(
    d: &Diagram,
    t: &Representation<K>,
    p: &BTreeMap<String, Matrix<K>>,
) -> Result<Representation<K>> {
    let f = &t.field;
    let at = |v: &str| p.get(v).cloned().unwrap_or_else(|| Matrix::identity(f.clone(), t.dim(v)));
    let mut out = Representation { field: f.clone(), dims: t.dims.clone(), mats: BTreeMap::new() };
    for (id, e) in d.edges() {
        let inv = at(&e.src).inverse_or_err(&format!("conjugating matrix at {}", e.src))?;
        out.mats.insert(id.to_string(), at(&e.dst).mul(t.mat(id)?)?.mul(&inv)?);
    }
    Ok(out)
}
