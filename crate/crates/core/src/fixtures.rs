//! Generated graded diagrams and representations.
//!
//! The tensor-word fixture starts from a few graded "leaf" vertices with edges
//! between them and closes under formal products up to a given depth. A leaf
//! representation extends to every word by tensoring, with τ the identity,
//! `T(α)` the Koszul-signed swap and `T(β)`, `T(u)` identities.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::Rng;

use crate::diagram::{Diagram, GradedDiagram, GradedRepresentation, ProductStructure, Representation, SignRule};
use crate::error::{Error, Result};
use crate::linalg::{sign, swap_matrix, Field, Matrix, SimpleExtension};

pub const UNIT: &str = "1";

pub fn word_product(x: &str, y: &str) -> String {
    format!("({x}*{y})")
}

/// Leaves and leaf edges `(id, src, dst)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeafDiagram {
    pub leaves: Vec<(String, bool)>,
    pub edges: Vec<(String, String, String)>,
}

/// Dimensions per leaf and matrices per leaf edge, in the order of the `LeafDiagram`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafRep<K: Field> {
    pub dims: Vec<usize>,
    pub mats: Vec<Matrix<K>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Recipe {
    Leaf(usize),
    Alpha(String, String),
    Identity,
    Left(String, String),
    Right(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFixture {
    pub graded: GradedDiagram,
    /// Cumulative vertex lists: `levels[k]` holds all words of depth at most `k`.
    pub levels: Vec<Vec<String>>,
    leaves: Vec<String>,
    /// Leaf indices of each word in tensor order.
    pub(crate) words: BTreeMap<String, Vec<usize>>,
    pub(crate) recipes: BTreeMap<String, Recipe>,
    sign_rule: SignRule,
}

impl TensorFixture {
    pub fn level(&self, k: usize) -> &[String] {
        &self.levels[k.min(self.levels.len() - 1)]
    }

    pub fn leaves(&self) -> &[String] {
        &self.leaves
    }
}

pub fn tensor_words(ld: &LeafDiagram, depth: usize, sign_rule: SignRule) -> Result<TensorFixture> {
    let mut d = Diagram::new();
    let mut words: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    d.add_vertex(UNIT, false)?;
    words.insert(UNIT.to_string(), vec![]);
    for (i, (leaf, g)) in ld.leaves.iter().enumerate() {
        if leaf.contains(['(', ')', '*']) || leaf == UNIT {
            return Err(Error::precondition(format!("leaf id {leaf} collides with word syntax")));
        }
        d.add_vertex(leaf, *g)?;
        words.insert(leaf.clone(), vec![i]);
    }
    let mut levels = vec![words.keys().cloned().collect::<Vec<_>>()];
    let mut product = BTreeMap::new();
    for _ in 0..depth {
        let prev = levels.last().unwrap().clone();
        let mut next: BTreeSet<String> = prev.iter().cloned().collect();
        for x in &prev {
            for y in &prev {
                let xy = word_product(x, y);
                if !words.contains_key(&xy) {
                    let grade = d.grade(x).unwrap() ^ d.grade(y).unwrap();
                    d.add_vertex(&xy, grade)?;
                    let mut l = words[x].clone();
                    l.extend(&words[y]);
                    words.insert(xy.clone(), l);
                }
                product.insert((x.clone(), y.clone()), xy.clone());
                next.insert(xy);
            }
        }
        levels.push(next.into_iter().collect());
    }
    let mut p = ProductStructure { unit: UNIT.to_string(), product, ..Default::default() };
    let mut recipes = BTreeMap::new();
    let mut queue = VecDeque::new();
    for (i, (id, s, t)) in ld.edges.iter().enumerate() {
        d.add_edge(id, s, t)?;
        recipes.insert(id.clone(), Recipe::Leaf(i));
        queue.push_back(id.clone());
    }
    let pairs: Vec<(String, String)> = p.product.keys().cloned().collect();
    for (x, y) in &pairs {
        if p.product.contains_key(&(y.clone(), x.clone())) {
            let id = format!("alpha[{x}|{y}]");
            d.add_edge(&id, &p.product[&(x.clone(), y.clone())], &p.product[&(y.clone(), x.clone())])?;
            p.alpha.insert((x.clone(), y.clone()), id.clone());
            recipes.insert(id.clone(), Recipe::Alpha(x.clone(), y.clone()));
            queue.push_back(id);
        }
    }
    for (x, yz) in &pairs {
        // x×(y×z) → (x×y)×z for every split of the right factor.
        for (y, z) in &pairs {
            if p.product[&(y.clone(), z.clone())] != *yz {
                continue;
            }
            let Some(xy) = p.product.get(&(x.clone(), y.clone())) else { continue };
            let Some(xy_z) = p.product.get(&(xy.clone(), z.clone())) else { continue };
            let id = format!("beta[{x}|{y}|{z}]");
            d.add_edge(&id, &p.product[&(x.clone(), yz.clone())], xy_z)?;
            p.beta.insert((x.clone(), y.clone(), z.clone()), id.clone());
            recipes.insert(id.clone(), Recipe::Identity);
            queue.push_back(id);
        }
    }
    for x in words.keys() {
        if let Some(ux) = p.product.get(&(UNIT.to_string(), x.clone())) {
            let id = format!("unit[{x}]");
            d.add_edge(&id, x, ux)?;
            p.unit_edges.insert(x.clone(), id.clone());
            recipes.insert(id.clone(), Recipe::Identity);
            queue.push_back(id);
        }
    }
    let vertices: Vec<String> = words.keys().cloned().collect();
    while let Some(g) = queue.pop_front() {
        let (a, b) = {
            let e = d.edge(&g).unwrap();
            (e.src.clone(), e.dst.clone())
        };
        for y in &vertices {
            if let (Some(ay), Some(by)) = (p.times(&a, y), p.times(&b, y)) {
                let id = format!("L[{g}|{y}]");
                let (ay, by) = (ay.to_string(), by.to_string());
                d.add_edge(&id, &ay, &by)?;
                p.left.insert((g.clone(), y.clone()), id.clone());
                recipes.insert(id.clone(), Recipe::Left(g.clone(), y.clone()));
                queue.push_back(id);
            }
            if let (Some(ya), Some(yb)) = (p.times(y, &a), p.times(y, &b)) {
                let id = format!("R[{y}|{g}]");
                let (ya, yb) = (ya.to_string(), yb.to_string());
                d.add_edge(&id, &ya, &yb)?;
                p.right.insert((y.clone(), g.clone()), id.clone());
                recipes.insert(id.clone(), Recipe::Right(y.clone(), g.clone()));
                queue.push_back(id);
            }
        }
    }
    Ok(TensorFixture {
        graded: GradedDiagram { diagram: d, product: p },
        levels,
        leaves: ld.leaves.iter().map(|l| l.0.clone()).collect(),
        words,
        recipes,
        sign_rule,
    })
}

/// Extends a leaf representation to all words of the fixture.
pub fn tensor_representation<K: Field>(
    fx: &TensorFixture,
    field: &K,
    leaf: &LeafRep<K>,
) -> Result<GradedRepresentation<K>> {
    if leaf.dims.len() != fx.leaves.len() {
        return Err(Error::Dimension(format!("{} leaf dimensions for {} leaves", leaf.dims.len(), fx.leaves.len())));
    }
    let d = &fx.graded.diagram;
    let dim = |w: &str| fx.words[w].iter().map(|&i| leaf.dims[i]).product::<usize>();
    let mut rep = Representation::new(field.clone());
    for w in fx.words.keys() {
        rep.dims.insert(w.clone(), dim(w));
    }
    let grade = |v: &str| d.grade(v).unwrap_or(false);
    let mut cache: BTreeMap<String, Matrix<K>> = BTreeMap::new();
    fn build<K: Field>(
        fx: &TensorFixture,
        field: &K,
        leaf: &LeafRep<K>,
        e: &str,
        cache: &mut BTreeMap<String, Matrix<K>>,
        dim: &dyn Fn(&str) -> usize,
        grade: &dyn Fn(&str) -> bool,
    ) -> Result<Matrix<K>> {
        if let Some(m) = cache.get(e) {
            return Ok(m.clone());
        }
        let edge = fx.graded.diagram.edge(e).unwrap();
        let m = match &fx.recipes[e] {
            Recipe::Leaf(i) => {
                let m = leaf.mats[*i].clone();
                if m.shape() != (dim(&edge.dst), dim(&edge.src)) {
                    return Err(Error::Dimension(format!("leaf edge {e} has shape {:?}", m.shape())));
                }
                m
            }
            Recipe::Alpha(x, y) => swap_matrix(field, dim(x), dim(y)).scale(&sign(field, grade(x) && grade(y))),
            Recipe::Identity => Matrix::identity(field.clone(), dim(&edge.src)),
            Recipe::Left(g, y) => {
                build(fx, field, leaf, g, cache, dim, grade)?.kron(&Matrix::identity(field.clone(), dim(y)))
            }
            Recipe::Right(y, g) => {
                let ge = fx.graded.diagram.edge(g).unwrap();
                let deg = grade(&ge.src) ^ grade(&ge.dst);
                let odd = match fx.sign_rule {
                    SignRule::Literal => deg,
                    SignRule::ProofVariant => deg && grade(y),
                };
                let inner = build(fx, field, leaf, g, cache, dim, grade)?;
                Matrix::identity(field.clone(), dim(y)).kron(&inner).scale(&sign(field, odd))
            }
        };
        cache.insert(e.to_string(), m.clone());
        Ok(m)
    }
    for (e, _) in d.proper_edges() {
        let m = build(fx, field, leaf, e, &mut cache, &dim, &grade)?;
        rep.mats.insert(e.to_string(), m);
    }
    rep.fill_identities(d);
    let tau = fx
        .graded
        .product
        .product
        .keys()
        .map(|(a, b)| ((a.clone(), b.clone()), Matrix::identity(field.clone(), dim(a) * dim(b))))
        .collect();
    Ok(GradedRepresentation { rep, tau })
}

/// A uniformly drawn small-integer matrix.
pub fn random_int_matrix<K: Field, R: Rng>(field: &K, rng: &mut R, rows: usize, cols: usize, bound: i64) -> Matrix<K> {
    Matrix::from_fn(field.clone(), rows, cols, |_, _| field.from_int(rng.gen_range(-bound..=bound)))
}

pub fn random_invertible<K: Field, R: Rng>(field: &K, rng: &mut R, n: usize, bound: i64) -> Matrix<K> {
    loop {
        let m = random_int_matrix(field, rng, n, n, bound);
        if m.is_invertible().unwrap_or(false) {
            return m;
        }
    }
}

/// Transports a graded representation along random isomorphisms `P_v`:
/// `T'(e) = P_dst T(e) P_src⁻¹` and `τ'_{a,b} = (P_a ⊗ P_b) τ_{a,b} P_{a×b}⁻¹`.
/// The result satisfies the same axioms and has nontrivial τ.
pub fn transport<K: Field, R: Rng>(
    gd: &GradedDiagram,
    t: &GradedRepresentation<K>,
    rng: &mut R,
    keep_unit: bool,
) -> Result<GradedRepresentation<K>> {
    let f = &t.rep.field;
    let mut p = BTreeMap::new();
    let mut pinv = BTreeMap::new();
    for v in gd.diagram.vertex_ids() {
        let n = t.rep.dim(&v);
        let m = if keep_unit && v == gd.product.unit {
            Matrix::identity(f.clone(), n)
        } else {
            random_invertible(f, rng, n, 2)
        };
        pinv.insert(v.clone(), m.inverse_or_err("transport")?);
        p.insert(v, m);
    }
    let mut rep = Representation::new(f.clone());
    rep.dims = t.rep.dims.clone();
    for (e, edge) in gd.diagram.edges() {
        let m = p[&edge.dst].mul(t.rep.mat(e)?)?.mul(&pinv[&edge.src])?;
        rep.mats.insert(e.to_string(), m);
    }
    let mut tau = BTreeMap::new();
    for ((a, b), m) in &t.tau {
        let ab =
            gd.product.times(a, b).ok_or_else(|| Error::precondition(format!("tau for undefined product {a}×{b}")))?;
        tau.insert((a.clone(), b.clone()), p[a].kron(&p[b]).mul(m)?.mul(&pinv[ab])?);
    }
    Ok(GradedRepresentation { rep, tau })
}

/// Random diagram on `nv` vertices `v0, v1, …` with `ne` random proper edges `e0, e1, …`.
pub fn random_diagram<R: Rng>(rng: &mut R, nv: usize, ne: usize) -> Diagram {
    let mut d = Diagram::new();
    for i in 0..nv {
        d.add_vertex(&format!("v{i}"), false).expect("fresh vertex id");
    }
    for i in 0..ne {
        let (s, t) = (rng.gen_range(0..nv), rng.gen_range(0..nv));
        d.add_edge(&format!("e{i}"), &format!("v{s}"), &format!("v{t}")).expect("fresh edge id");
    }
    d
}

/// Random representation with dimensions in `0..=max_dim` (or the given dims).
pub fn random_representation<K: Field, R: Rng>(
    field: &K,
    rng: &mut R,
    d: &Diagram,
    dims: Option<&BTreeMap<String, usize>>,
    max_dim: usize,
    bound: i64,
) -> Representation<K> {
    let mut t = Representation::new(field.clone());
    for v in d.vertex_ids() {
        let n = dims.map_or_else(|| rng.gen_range(0..=max_dim), |m| m[&v]);
        t.dims.insert(v, n);
    }
    for (e, edge) in d.proper_edges() {
        let m = random_int_matrix(field, rng, t.dims[&edge.dst], t.dims[&edge.src], bound);
        t.mats.insert(e.to_string(), m);
    }
    t.fill_identities(d);
    t
}

/// The idempotent line: one even vertex `f` with `f×f = f = 𝟙`, `T(f) = K`.
pub fn idempotent_line<K: Field>(field: &K) -> (GradedDiagram, GradedRepresentation<K>) {
    let mut d = Diagram::new();
    d.add_vertex("f", false).expect("fresh vertex id");
    let id = crate::diagram::identity_edge_id("f");
    let key = |a: &str, b: &str| (a.to_string(), b.to_string());
    let mut p = ProductStructure { unit: "f".into(), ..Default::default() };
    p.product.insert(key("f", "f"), "f".into());
    p.alpha.insert(key("f", "f"), id.clone());
    p.beta.insert(("f".into(), "f".into(), "f".into()), id.clone());
    p.unit_edges.insert("f".into(), id);
    let mut rep = Representation::new(field.clone());
    rep.dims.insert("f".into(), 1);
    rep.fill_identities(&d);
    let mut tau = BTreeMap::new();
    tau.insert(key("f", "f"), Matrix::identity(field.clone(), 1));
    (GradedDiagram { diagram: d, product: p }, GradedRepresentation { rep, tau })
}

/// Two representations of `s ⟲ v → w` over `ℚ(√2)`: the first is defined over ℚ
/// with `T(s) = [[0,2],[1,0]]`, the second has `T(s) = diag(√2, −√2)`, which is
/// not conjugate to any rational matrix by a rational change of basis.
/// They become isomorphic only once `√2` is adjoined.
pub fn sqrt2_pair() -> (Diagram, Representation<SimpleExtension>, Representation<SimpleExtension>) {
    let k = SimpleExtension::sqrt2();
    let mut d = Diagram::new();
    d.add_vertex("v", false).expect("fresh vertex id");
    d.add_vertex("w", false).expect("fresh vertex id");
    d.add_edge("s", "v", "v").expect("fresh edge id");
    d.add_edge("e", "v", "w").expect("fresh edge id");
    let mut t1 = Representation::new(k.clone());
    t1.dims.insert("v".into(), 2);
    t1.dims.insert("w".into(), 2);
    t1.mats.insert("s".into(), Matrix::from_ints(&[&[0, 2], &[1, 0]]).to_field(&k));
    t1.mats.insert("e".into(), Matrix::identity(k.clone(), 2));
    t1.fill_identities(&d);
    let mut t2 = t1.clone();
    let r = k.generator();
    let mut s = Matrix::zeros(k.clone(), 2, 2);
    s.set(0, 0, r.clone());
    s.set(1, 1, k.neg(&r));
    t2.mats.insert("s".into(), s);
    (d, t1, t2)
}
