//! Diagrams, graded product structures and their representations.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::{sign, swap_matrix, Field, Matrix};
use crate::report::Report;

/// Vertex grades live in Z/2; `true` means odd.
pub type Grade = bool;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: String,
    pub dst: String,
    pub identity: bool,
}

/// A directed graph with a distinguished identity edge at each vertex.
///
/// Vertices and edges are kept in id order so every derived coordinate system
/// is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    vertices: BTreeMap<String, Grade>,
    edges: BTreeMap<String, Edge>,
}

pub fn identity_edge_id(v: &str) -> String {
    format!("id_{v}")
}

fn check_id(id: &str) -> Result<()> {
    if id.is_empty() || id.contains(',') {
        return Err(Error::precondition(format!("invalid id {id:?}: ids are nonempty and contain no commas")));
    }
    Ok(())
}

impl Diagram {
    pub fn new() -> Self {
        Diagram::default()
    }

    /// Add a vertex together with its identity edge `id_<v>`.
    pub fn add_vertex(&mut self, id: &str, grade: Grade) -> Result<()> {
        self.add_bare_vertex(id, grade)?;
        self.add_identity_edge(&identity_edge_id(id), id)
    }

    /// Add a vertex without an identity edge; the caller adds one explicitly.
    pub fn add_bare_vertex(&mut self, id: &str, grade: Grade) -> Result<()> {
        check_id(id)?;
        if self.vertices.insert(id.to_string(), grade).is_some() {
            return Err(Error::precondition(format!("duplicate vertex {id}")));
        }
        Ok(())
    }

    pub fn add_identity_edge(&mut self, id: &str, v: &str) -> Result<()> {
        self.insert_edge(id, Edge { src: v.to_string(), dst: v.to_string(), identity: true })
    }

    pub fn add_edge(&mut self, id: &str, src: &str, dst: &str) -> Result<()> {
        self.insert_edge(id, Edge { src: src.to_string(), dst: dst.to_string(), identity: false })
    }

    fn insert_edge(&mut self, id: &str, e: Edge) -> Result<()> {
        check_id(id)?;
        if self.edges.contains_key(id) {
            return Err(Error::precondition(format!("duplicate edge {id}")));
        }
        self.edges.insert(id.to_string(), e);
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&str, Grade)> {
        self.vertices.iter().map(|(k, g)| (k.as_str(), *g))
    }

    pub fn vertex_ids(&self) -> Vec<String> {
        self.vertices.keys().cloned().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &Edge)> {
        self.edges.iter().map(|(k, e)| (k.as_str(), e))
    }

    /// Edges that are not identity edges.
    pub fn proper_edges(&self) -> impl Iterator<Item = (&str, &Edge)> {
        self.edges().filter(|(_, e)| !e.identity)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains_key(v)
    }

    pub fn grade(&self, v: &str) -> Option<Grade> {
        self.vertices.get(v).copied()
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.get(id)
    }

    pub fn identity_edge(&self, v: &str) -> Option<&str> {
        self.edges.iter().find(|(_, e)| e.identity && e.src == v).map(|(k, _)| k.as_str())
    }

    /// Connected components (ignoring direction) of the full diagram.
    pub fn components(&self) -> Vec<Vec<String>> {
        let ids = self.vertex_ids();
        let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.edges.values() {
            if let (Some(&a), Some(&b)) = (index.get(e.src.as_str()), index.get(e.dst.as_str())) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (i, v) in ids.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(v.clone());
        }
        groups.into_values().collect()
    }
}

/// Lists missing or repeated identity edges and dangling endpoints.
pub fn validate_diagram(d: &Diagram) -> Report {
    let mut r = Report::new();
    let mut identity_count: BTreeMap<&str, usize> = BTreeMap::new();
    for (id, e) in d.edges() {
        for end in [&e.src, &e.dst] {
            r.require(d.has_vertex(end), "endpoints", || format!("edge {id} references unknown vertex {end}"));
        }
        if e.identity {
            if e.src != e.dst {
                r.push("identity", format!("identity edge {id} is not a loop"));
            }
            *identity_count.entry(e.src.as_str()).or_default() += 1;
        }
    }
    for (v, _) in d.vertices() {
        match identity_count.get(v).copied().unwrap_or(0) {
            0 => r.push("identity", format!("vertex {v} has no identity edge")),
            1 => {}
            n => r.push("identity", format!("vertex {v} has {n} identity edges")),
        }
    }
    r
}

/// Full subdiagram on the given vertices, with every edge between them.
pub fn finite_subdiagram<S: AsRef<str>>(d: &Diagram, vertices: &[S]) -> Result<Diagram> {
    let keep: BTreeSet<&str> = vertices.iter().map(|s| s.as_ref()).collect();
    for v in &keep {
        if !d.has_vertex(v) {
            return Err(Error::precondition(format!("vertex {v} is not in the diagram")));
        }
    }
    let vertices = d.vertices.iter().filter(|(k, _)| keep.contains(k.as_str())).map(|(k, g)| (k.clone(), *g)).collect();
    let edges = d
        .edges
        .iter()
        .filter(|(_, e)| keep.contains(e.src.as_str()) && keep.contains(e.dst.as_str()))
        .map(|(k, e)| (k.clone(), e.clone()))
        .collect();
    Ok(Diagram { vertices, edges })
}

pub fn pair_id(a: &str, b: &str) -> String {
    format!("{a}&{b}")
}

/// Product diagram: vertices are pairs, edges are `e × id` and `id × e` only.
pub fn product_diagram(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    let mut out = Diagram::new();
    for (v, gv) in d1.vertices() {
        for (w, gw) in d2.vertices() {
            let vw = pair_id(v, w);
            out.add_bare_vertex(&vw, gv ^ gw)?;
            let id_v = d1.identity_edge(v).ok_or_else(|| Error::precondition(format!("{v} lacks an identity edge")))?;
            let id_w = d2.identity_edge(w).ok_or_else(|| Error::precondition(format!("{w} lacks an identity edge")))?;
            out.add_identity_edge(&pair_id(id_v, id_w), &vw)?;
        }
    }
    for (e, edge) in d1.proper_edges() {
        for (w, _) in d2.vertices() {
            let id_w = d2.identity_edge(w).unwrap();
            out.add_edge(&pair_id(e, id_w), &pair_id(&edge.src, w), &pair_id(&edge.dst, w))?;
        }
    }
    for (v, _) in d1.vertices() {
        let id_v = d1.identity_edge(v).unwrap();
        for (e, edge) in d2.proper_edges() {
            out.add_edge(&pair_id(id_v, e), &pair_id(v, &edge.src), &pair_id(v, &edge.dst))?;
        }
    }
    Ok(out)
}

/// Commutative product structure on a graded diagram.
///
/// The product may be partial (a truncated localization is not closed under
/// products); every table entry present is checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProductStructure {
    pub product: BTreeMap<(String, String), String>,
    /// `alpha[(f, g)]`: an edge `f×g → g×f`.
    pub alpha: BTreeMap<(String, String), String>,
    /// `beta[(f, g, h)]`: an edge `f×(g×h) → (f×g)×h`.
    pub beta: BTreeMap<(String, String, String), String>,
    pub unit: String,
    /// `unit_edges[f]`: an edge `f → 𝟙×f`.
    pub unit_edges: BTreeMap<String, String>,
    /// `left[(γ, g)]`: the edge `γ×id_g : f×g → f'×g` for `γ : f → f'`.
    pub left: BTreeMap<(String, String), String>,
    /// `right[(f, γ)]`: the edge `id_f×γ : f×g → f×g'` for `γ : g → g'`.
    pub right: BTreeMap<(String, String), String>,
}

impl ProductStructure {
    pub fn times(&self, f: &str, g: &str) -> Option<&str> {
        self.product.get(&(f.to_string(), g.to_string())).map(|s| s.as_str())
    }

    /// Vertices `f×g` for `f, g ∈ F` that are missing from `target`.
    pub fn missing_products<S: AsRef<str>>(&self, f: &[S], target: &Diagram) -> Vec<String> {
        let mut missing = Vec::new();
        for a in f {
            for b in f {
                let (a, b) = (a.as_ref(), b.as_ref());
                match self.times(a, b) {
                    Some(p) if target.has_vertex(p) => {}
                    Some(p) => missing.push(format!("{a}×{b} = {p}")),
                    None => missing.push(format!("{a}×{b} (undefined)")),
                }
            }
        }
        missing
    }
}

/// A diagram together with a product structure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDiagram {
    pub diagram: Diagram,
    pub product: ProductStructure,
}

/// Matrices for the edges of a diagram; `T(e)` maps `T(src)` to `T(dst)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<K: Field> {
    pub field: K,
    pub dims: BTreeMap<String, usize>,
    pub mats: BTreeMap<String, Matrix<K>>,
}

impl<K: Field> Representation<K> {
    pub fn new(field: K) -> Self {
        Representation { field, dims: BTreeMap::new(), mats: BTreeMap::new() }
    }

    pub fn dim(&self, v: &str) -> usize {
        self.dims.get(v).copied().unwrap_or(0)
    }

    pub fn mat(&self, e: &str) -> Result<&Matrix<K>> {
        self.mats.get(e).ok_or_else(|| Error::precondition(format!("no matrix for edge {e}")))
    }

    /// Assign identity matrices to every identity edge lacking a matrix.
    pub fn fill_identities(&mut self, d: &Diagram) {
        for (id, e) in d.edges() {
            if e.identity && !self.mats.contains_key(id) {
                let n = self.dim(&e.src);
                self.mats.insert(id.to_string(), Matrix::identity(self.field.clone(), n));
            }
        }
    }

    pub fn restrict(&self, d: &Diagram) -> Self {
        Representation {
            field: self.field.clone(),
            dims: self.dims.iter().filter(|(v, _)| d.has_vertex(v)).map(|(k, v)| (k.clone(), *v)).collect(),
            mats: self.mats.iter().filter(|(e, _)| d.edge(e).is_some()).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    pub fn map_field<L: Field>(&self, target: &L, embed: impl Fn(&K::Elem) -> L::Elem) -> Representation<L> {
        Representation {
            field: target.clone(),
            dims: self.dims.clone(),
            mats: self.mats.iter().map(|(k, m)| (k.clone(), m.lift(target, &embed))).collect(),
        }
    }
}

pub fn validate_representation<K: Field>(d: &Diagram, t: &Representation<K>) -> Report {
    let mut r = Report::new();
    for (v, _) in d.vertices() {
        r.require(t.dims.contains_key(v), "dims", || format!("vertex {v} has no dimension"));
    }
    for v in t.dims.keys() {
        r.require(d.has_vertex(v), "dims", || format!("dimension given for unknown vertex {v}"));
    }
    for e in t.mats.keys() {
        r.require(d.edge(e).is_some(), "mats", || format!("matrix given for unknown edge {e}"));
    }
    for (id, e) in d.edges() {
        let Some(m) = t.mats.get(id) else {
            r.push("mats", format!("edge {id} has no matrix"));
            continue;
        };
        let want = (t.dim(&e.dst), t.dim(&e.src));
        if m.shape() != want {
            r.push("shape", format!("edge {id} has shape {:?}, expected {:?}", m.shape(), want));
        } else if e.identity && !m.is_identity() {
            r.push("identity", format!("identity edge {id} is not mapped to the identity"));
        }
    }
    r
}

/// A representation with the isomorphisms `τ_{f,g} : T(f×g) → T(f)⊗T(g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedRepresentation<K: Field> {
    pub rep: Representation<K>,
    pub tau: BTreeMap<(String, String), Matrix<K>>,
}

impl<K: Field> GradedRepresentation<K> {
    pub fn tau(&self, f: &str, g: &str) -> Result<&Matrix<K>> {
        self.tau
            .get(&(f.to_string(), g.to_string()))
            .ok_or_else(|| Error::precondition(format!("no tau for the pair ({f}, {g})")))
    }

    pub fn map_field<L: Field>(&self, target: &L, embed: impl Fn(&K::Elem) -> L::Elem) -> GradedRepresentation<L> {
        GradedRepresentation {
            rep: self.rep.map_field(target, &embed),
            tau: self.tau.iter().map(|(k, m)| (k.clone(), m.lift(target, &embed))).collect(),
        }
    }
}

/// Which sign the right-factor axiom carries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SignRule {
    /// `(-1)^{|γ|}`.
    #[default]
    Literal,
    /// `(-1)^{|f||γ|}`, the form used when proving the bialgebra structure.
    ProofVariant,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GradedCheckOptions {
    pub sign_rule: SignRule,
    /// Also require the product and edge tables to be total.
    pub require_total: bool,
}

pub const AXIOM_COMMUTATIVITY: &str = "axiom1-commutativity";
pub const AXIOM_LEFT: &str = "axiom2-left-edges";
pub const AXIOM_RIGHT: &str = "axiom3-right-edges";
pub const AXIOM_ASSOCIATIVITY: &str = "axiom4-associativity";
pub const AXIOM_UNIT: &str = "axiom5-unit";
pub const STRUCTURE: &str = "structure";

/// Checks the graded-representation axioms as exact matrix identities.
pub fn validate_graded<K: Field>(gd: &GradedDiagram, t: &GradedRepresentation<K>, opts: GradedCheckOptions) -> Report {
    let mut r = validate_diagram(&gd.diagram);
    r.merge(validate_representation(&gd.diagram, &t.rep));
    if !r.is_ok() {
        return r;
    }
    let d = &gd.diagram;
    let p = &gd.product;
    let f = &t.rep.field;
    let grade = |v: &str| d.grade(v).unwrap_or(false);

    check_structure(gd, opts.require_total, &mut r);
    if !r.is_ok() {
        return r;
    }

    let mut taus = BTreeMap::new();
    for ((a, b), ab) in &p.product {
        let want = (t.rep.dim(a) * t.rep.dim(b), t.rep.dim(ab));
        match t.tau.get(&(a.clone(), b.clone())) {
            None => r.push(STRUCTURE, format!("no tau for ({a}, {b})")),
            Some(m) if m.shape() != want => {
                r.push(STRUCTURE, format!("tau ({a}, {b}) has shape {:?}, expected {:?}", m.shape(), want))
            }
            Some(m) => match m.inverse() {
                Ok(Some(inv)) => {
                    taus.insert((a.clone(), b.clone()), (m, inv));
                }
                _ => r.push(STRUCTURE, format!("tau ({a}, {b}) is not invertible")),
            },
        }
    }
    if !r.is_ok() {
        return r;
    }
    type Taus<'m, K> = BTreeMap<(String, String), (&'m Matrix<K>, Matrix<K>)>;
    fn lookup<'m, K: Field>(taus: &'m Taus<'m, K>, a: &str, b: &str) -> &'m (&'m Matrix<K>, Matrix<K>) {
        &taus[&(a.to_string(), b.to_string())]
    }
    let tau = |a: &str, b: &str| lookup(&taus, a, b);
    let conj = |edge: &str, src: (&str, &str), dst: (&str, &str)| -> Result<Matrix<K>> {
        tau(dst.0, dst.1).0.mul(t.rep.mat(edge)?)?.mul(&tau(src.0, src.1).1)
    };

    for ((a, b), e) in &p.alpha {
        let lhs = conj(e, (a, b), (b, a));
        let rhs = swap_matrix(f, t.rep.dim(a), t.rep.dim(b)).scale(&sign(f, grade(a) && grade(b)));
        r.require(lhs.as_ref().is_ok_and(|m| *m == rhs), AXIOM_COMMUTATIVITY, || {
            format!("tau T(alpha) tau^-1 differs from the signed swap for ({a}, {b})")
        });
    }

    for ((gamma, g), e) in &p.left {
        let ge = d.edge(gamma).unwrap();
        let lhs = conj(e, (&ge.src, g), (&ge.dst, g));
        let rhs = t.rep.mat(gamma).map(|m| m.kron(&Matrix::identity(f.clone(), t.rep.dim(g))));
        r.require(matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y), AXIOM_LEFT, || {
            format!("edge {e} is not T({gamma}) ⊗ id under tau")
        });
    }

    for ((a, gamma), e) in &p.right {
        let ge = d.edge(gamma).unwrap();
        let deg = grade(&ge.src) ^ grade(&ge.dst);
        let s = match opts.sign_rule {
            SignRule::Literal => deg,
            SignRule::ProofVariant => deg && grade(a),
        };
        let lhs = conj(e, (a, &ge.src), (a, &ge.dst));
        let rhs = t.rep.mat(gamma).map(|m| Matrix::identity(f.clone(), t.rep.dim(a)).kron(m).scale(&sign(f, s)));
        r.require(matches!((&lhs, &rhs), (Ok(x), Ok(y)) if x == y), AXIOM_RIGHT, || {
            format!("edge {e} is not the signed id ⊗ T({gamma}) under tau")
        });
    }

    for ((a, b, c), e) in &p.beta {
        let ok = (|| -> Result<bool> {
            let bc = p.times(b, c).unwrap();
            let ab = p.times(a, b).unwrap();
            let id = |v: &str| Matrix::identity(f.clone(), t.rep.dim(v));
            let lhs = tau(a, b).0.kron(&id(c)).mul(tau(ab, c).0)?.mul(t.rep.mat(e)?)?;
            let rhs = id(a).kron(tau(b, c).0).mul(tau(a, bc).0)?;
            Ok(lhs == rhs)
        })();
        r.require(ok.unwrap_or(false), AXIOM_ASSOCIATIVITY, || format!("associator square fails for ({a}, {b}, {c})"));
    }

    for (v, e) in &p.unit_edges {
        let ok = t.rep.mat(e).and_then(|m| m.is_invertible()).unwrap_or(false);
        r.require(ok, AXIOM_UNIT, || format!("T({e}) is not invertible for the unit edge of {v}"));
    }
    r
}

fn check_structure(gd: &GradedDiagram, require_total: bool, r: &mut Report) {
    let d = &gd.diagram;
    let p = &gd.product;
    let grade = |v: &str| d.grade(v);
    let edge_is = |e: &str, src: &str, dst: &str| d.edge(e).is_some_and(|x| x.src == src && x.dst == dst);

    match grade(&p.unit) {
        Some(false) => {}
        Some(true) => r.push(STRUCTURE, format!("unit {} is odd", p.unit)),
        None => r.push(STRUCTURE, format!("unit {} is not a vertex", p.unit)),
    }
    for ((a, b), ab) in &p.product {
        match (grade(a), grade(b), grade(ab)) {
            (Some(x), Some(y), Some(z)) => r.require(x ^ y == z, STRUCTURE, || {
                format!("grade of {ab} is not the sum of the grades of {a} and {b}")
            }),
            _ => r.push(STRUCTURE, format!("product {a}×{b} = {ab} references unknown vertices")),
        }
    }
    let times = |a: &str, b: &str| p.times(a, b).map(str::to_string);
    for ((a, b), e) in &p.alpha {
        let ok = matches!((times(a, b), times(b, a)), (Some(x), Some(y)) if edge_is(e, &x, &y));
        r.require(ok, STRUCTURE, || format!("alpha edge {e} does not go from {a}×{b} to {b}×{a}"));
    }
    for ((a, b, c), e) in &p.beta {
        let src = times(b, c).and_then(|bc| times(a, &bc));
        let dst = times(a, b).and_then(|ab| times(&ab, c));
        let ok = matches!((src, dst), (Some(x), Some(y)) if edge_is(e, &x, &y));
        r.require(ok, STRUCTURE, || format!("beta edge {e} does not go from {a}×({b}×{c}) to ({a}×{b})×{c}"));
    }
    for (v, e) in &p.unit_edges {
        let ok = times(&p.unit, v).is_some_and(|uv| edge_is(e, v, &uv));
        r.require(ok, STRUCTURE, || format!("unit edge {e} does not go from {v} to 𝟙×{v}"));
    }
    for ((gamma, g), e) in &p.left {
        let ok = d.edge(gamma).is_some_and(
            |ge| matches!((times(&ge.src, g), times(&ge.dst, g)), (Some(x), Some(y)) if edge_is(e, &x, &y)),
        );
        r.require(ok, STRUCTURE, || format!("edge {e} is not {gamma}×id_{g}"));
    }
    for ((a, gamma), e) in &p.right {
        let ok = d.edge(gamma).is_some_and(
            |ge| matches!((times(a, &ge.src), times(a, &ge.dst)), (Some(x), Some(y)) if edge_is(e, &x, &y)),
        );
        r.require(ok, STRUCTURE, || format!("edge {e} is not id_{a}×{gamma}"));
    }
    if !require_total {
        return;
    }
    let vs = d.vertex_ids();
    for a in &vs {
        r.require(p.unit_edges.contains_key(a), STRUCTURE, || format!("no unit edge for {a}"));
        for b in &vs {
            let key = (a.clone(), b.clone());
            r.require(p.product.contains_key(&key), STRUCTURE, || format!("product {a}×{b} undefined"));
            r.require(p.alpha.contains_key(&key), STRUCTURE, || format!("no alpha edge for ({a}, {b})"));
            for c in &vs {
                let key = (a.clone(), b.clone(), c.clone());
                r.require(p.beta.contains_key(&key), STRUCTURE, || format!("no beta edge for ({a}, {b}, {c})"));
            }
        }
    }
    for (gamma, ge) in d.proper_edges() {
        for g in &vs {
            r.require(p.left.contains_key(&(gamma.to_string(), g.clone())), STRUCTURE, || {
                format!("no edge {gamma}×id_{g}")
            });
            r.require(p.right.contains_key(&(g.clone(), gamma.to_string())), STRUCTURE, || {
                format!("no edge id_{g}×{gamma}")
            });
        }
        let _ = ge;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Q;

    fn chain() -> Diagram {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        d.add_vertex("w", false).unwrap();
        d.add_edge("e", "v", "w").unwrap();
        d
    }

    #[test]
    fn single_vertex_is_valid() {
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        assert!(validate_diagram(&d).is_ok());
    }

    #[test]
    fn missing_identity_and_dangling_edge() {
        let mut d = Diagram::new();
        d.add_bare_vertex("v", false).unwrap();
        assert!(!validate_diagram(&d).passed("identity"));
        let mut d = Diagram::new();
        d.add_vertex("v", false).unwrap();
        d.add_edge("e", "v", "nowhere").unwrap();
        assert!(!validate_diagram(&d).passed("endpoints"));
    }

    #[test]
    fn representation_checks() {
        let d = chain();
        let mut t = Representation::new(Q);
        t.dims.insert("v".into(), 1);
        t.dims.insert("w".into(), 2);
        t.mats.insert("e".into(), Matrix::from_ints(&[&[1], &[0]]));
        t.fill_identities(&d);
        assert!(validate_representation(&d, &t).is_ok());
        t.mats.insert("id_v".into(), Matrix::from_ints(&[&[2]]));
        assert!(!validate_representation(&d, &t).passed("identity"));
        t.fill_identities(&d);
        t.mats.insert("id_v".into(), Matrix::identity(Q, 1));
        t.mats.insert("e".into(), Matrix::from_ints(&[&[1, 0]]));
        assert!(!validate_representation(&d, &t).passed("shape"));
    }

    #[test]
    fn subdiagrams() {
        let d = chain();
        assert_eq!(finite_subdiagram(&d, &d.vertex_ids()).unwrap(), d);
        assert_eq!(finite_subdiagram::<&str>(&d, &[]).unwrap(), Diagram::new());
        let only_v = finite_subdiagram(&d, &["v"]).unwrap();
        assert_eq!(only_v.num_edges(), 1);
        assert!(finite_subdiagram(&d, &["x"]).is_err());
    }

    #[test]
    fn products_of_diagrams() {
        let mut point = Diagram::new();
        point.add_vertex("p", true).unwrap();
        let pp = product_diagram(&point, &point).unwrap();
        assert_eq!(pp.num_vertices(), 1);
        assert_eq!(pp.grade("p&p"), Some(false));
        let cp = product_diagram(&chain(), &point).unwrap();
        assert_eq!(cp.num_vertices(), 2);
        assert_eq!(cp.proper_edges().count(), 1);
        assert!(validate_diagram(&cp).is_ok());
        let cc = product_diagram(&chain(), &chain()).unwrap();
        // e×id_v, e×id_w, id_v×e, id_w×e; never e×e
        assert_eq!(cc.proper_edges().count(), 4);
        assert!(cc.edge("e&e").is_none());
    }
}
