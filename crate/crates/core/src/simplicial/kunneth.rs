//! Graded fixtures of geometric origin: words in good pairs act on tensor
//! products of relative cochain complexes, `T(w)` is the cohomology of the
//! tensor complex in the total degree, and `τ` inverts the cross product.

use std::collections::BTreeMap;

use crate::diagram::{GradedRepresentation, Representation, SignRule};
use crate::error::{Error, Result};
use crate::fixtures::{tensor_words, LeafDiagram, Recipe, TensorFixture};
use crate::linalg::field::rat;
use crate::linalg::{Matrix, Rational, Rationals, Q};

use super::cochain::{induced_map, CochainComplex, Cohomology};
use super::fixture::{MapSpec, PairSpec};
use super::pairs::{check_pair_map, is_good_pair, pullback, relative_cochains};

/// A leaf complex with the degree its cohomology is concentrated in.
struct Leaf {
    complex: CochainComplex,
    degree: usize,
}

/// Tensor product of leaf complexes in a fixed factor order.
struct Tensor {
    factors: Vec<usize>,
    /// Per total degree: `(multi-degree, offset)` of each nonzero block.
    blocks: Vec<Vec<(Vec<usize>, usize)>>,
    complex: CochainComplex,
}

fn multi_degrees(tops: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &t in tops {
        out = out.into_iter().flat_map(|p| (0..t).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

impl Tensor {
    fn new(leaves: &[Leaf], factors: &[usize]) -> Result<Self> {
        let tops: Vec<usize> = factors.iter().map(|&i| leaves[i].complex.dims.len().max(1)).collect();
        let total = tops.iter().map(|t| t - 1).sum::<usize>() + 1;
        let mut blocks = vec![Vec::new(); total];
        let mut dims = vec![0usize; total];
        for k in multi_degrees(&tops) {
            let size: usize = k.iter().zip(factors).map(|(&kj, &i)| leaves[i].complex.dim(kj)).product();
            if size > 0 {
                let n: usize = k.iter().sum();
                blocks[n].push((k, dims[n]));
                dims[n] += size;
            }
        }
        let mut d = Vec::new();
        for n in 0..total - 1 {
            let mut m = Matrix::zeros(Q, dims[n + 1], dims[n]);
            for (k, off) in &blocks[n] {
                let mut before = 0;
                for j in 0..k.len() {
                    let mut target = k.clone();
                    target[j] += 1;
                    if let Some(dst) = blocks[n + 1].iter().find(|b| b.0 == target).map(|b| b.1) {
                        let piece = kron_all(k.iter().zip(factors).enumerate().map(|(l, (&kl, &i))| {
                            let c = &leaves[i].complex;
                            if l == j {
                                c.differential(kl)
                            } else {
                                Matrix::identity(Q, c.dim(kl))
                            }
                        }));
                        let s = if before % 2 == 0 { rat(1) } else { rat(-1) };
                        paste(&mut m, dst, *off, &piece.scale(&s));
                    }
                    before += k[j];
                }
            }
            d.push(m);
        }
        Ok(Tensor { factors: factors.to_vec(), blocks, complex: CochainComplex::new(dims, d)? })
    }

    fn offset(&self, n: usize, k: &[usize]) -> Option<usize> {
        self.blocks.get(n)?.iter().find(|b| b.0 == k).map(|b| b.1)
    }
}

fn kron_all(parts: impl Iterator<Item = Matrix<Rationals>>) -> Matrix<Rationals> {
    parts.fold(Matrix::identity(Q, 1), |acc, m| acc.kron(&m))
}

fn paste(m: &mut Matrix<Rationals>, r0: usize, c0: usize, piece: &Matrix<Rationals>) {
    for r in 0..piece.rows() {
        for c in 0..piece.cols() {
            if *piece.get(r, c) != rat(0) {
                m.set(r0 + r, c0 + c, piece.get(r, c).clone());
            }
        }
    }
}

/// How an edge acts on flattened tensor factors.
#[derive(Clone, Debug)]
enum FlatMap {
    /// One optional leaf chain map per factor; `None` is the identity.
    Factors(Vec<Option<usize>>),
    /// Target factor `j` is source factor `perm[j]`, with the Koszul sign.
    Permute(Vec<usize>),
}

impl FlatMap {
    fn pad(self, before: usize, after: usize) -> FlatMap {
        match self {
            FlatMap::Factors(f) => FlatMap::Factors(
                std::iter::repeat_n(None, before).chain(f).chain(std::iter::repeat_n(None, after)).collect(),
            ),
            FlatMap::Permute(p) => {
                let n = p.len();
                FlatMap::Permute(
                    (0..before)
                        .chain(p.into_iter().map(|x| x + before))
                        .chain(before + n..before + n + after)
                        .collect(),
                )
            }
        }
    }
}

pub struct KunnethFixture {
    pub words: TensorFixture,
    pub rep: GradedRepresentation<Rationals>,
}

/// Builds a graded fixture from good pairs and degree-preserving maps between them.
pub fn kunneth_fixture(
    pairs: &[PairSpec],
    maps: &[MapSpec],
    depth: usize,
    sign_rule: SignRule,
) -> Result<KunnethFixture> {
    let index: BTreeMap<&str, usize> = pairs.iter().enumerate().map(|(i, p)| (p.name.as_str(), i)).collect();
    let get = |n: &str| index.get(n).copied().ok_or_else(|| Error::precondition(format!("unknown pair {n}")));
    let mut leaves = Vec::new();
    let mut rcs = Vec::new();
    for p in pairs {
        let rc = relative_cochains(&p.x, &p.y)?;
        if !is_good_pair(&p.x, &p.y, p.degree)? {
            return Err(Error::precondition(format!("pair {} is not good in degree {}", p.name, p.degree)));
        }
        leaves.push(Leaf { complex: rc.complex.clone(), degree: p.degree });
        rcs.push(rc);
    }
    let mut chain_maps: Vec<Vec<Matrix<Rationals>>> = Vec::new();
    let mut ld =
        LeafDiagram { leaves: pairs.iter().map(|p| (p.name.clone(), p.degree % 2 == 1)).collect(), edges: vec![] };
    for m in maps {
        let (dom, cod) = (get(&m.domain)?, get(&m.codomain)?);
        if pairs[dom].degree != pairs[cod].degree {
            return Err(Error::precondition(format!("map {} changes degree", m.name)));
        }
        check_pair_map(&m.vertex_map, (&pairs[dom].x, &pairs[dom].y), (&pairs[cod].x, &pairs[cod].y))?;
        let top = leaves[dom].complex.dims.len().max(leaves[cod].complex.dims.len());
        chain_maps.push((0..top).map(|k| pullback(&m.vertex_map, &rcs[dom], &rcs[cod], k)).collect::<Result<_>>()?);
        ld.edges.push((m.name.clone(), m.codomain.clone(), m.domain.clone()));
    }
    let words = tensor_words(&ld, depth, sign_rule)?;
    let tensors: BTreeMap<&str, Tensor> =
        words.words.iter().map(|(w, f)| Ok((w.as_str(), Tensor::new(&leaves, f)?))).collect::<Result<_>>()?;
    let degree = |w: &str| words.words[w].iter().map(|&i| leaves[i].degree).sum::<usize>();
    let mut cohom: BTreeMap<&str, Cohomology> = BTreeMap::new();
    for (w, t) in &tensors {
        cohom.insert(w, t.complex.cohomology(degree(w))?);
    }

    let mut flat: BTreeMap<String, FlatMap> = BTreeMap::new();
    fn flat_of(words: &TensorFixture, e: &str, flat: &mut BTreeMap<String, FlatMap>) -> FlatMap {
        if let Some(f) = flat.get(e) {
            return f.clone();
        }
        let d = &words.graded.diagram;
        let len = |w: &str| words.words[w].len();
        let edge = d.edge(e).unwrap();
        let f = match &words.recipes[e] {
            Recipe::Leaf(i) => FlatMap::Factors(vec![Some(*i)]),
            Recipe::Identity => FlatMap::Factors(vec![None; len(&edge.src)]),
            Recipe::Alpha(x, y) => {
                let (a, b) = (len(x), len(y));
                FlatMap::Permute((a..a + b).chain(0..a).collect())
            }
            Recipe::Left(g, y) => flat_of(words, g, flat).pad(0, len(y)),
            Recipe::Right(y, g) => flat_of(words, g, flat).pad(len(y), 0),
        };
        flat.insert(e.to_string(), f.clone());
        f
    }

    let d = &words.graded.diagram;
    let mut rep = Representation::new(Q);
    for (w, h) in &cohom {
        rep.dims.insert(w.to_string(), h.dim());
    }
    for (e, edge) in d.proper_edges() {
        let fm = flat_of(&words, e, &mut flat);
        let (src, dst) = (&tensors[edge.src.as_str()], &tensors[edge.dst.as_str()]);
        let n = degree(&edge.src);
        let chain = realize(&fm, src, dst, n, &leaves, &chain_maps)?;
        let m = induced_map(&cohom[edge.src.as_str()], &cohom[edge.dst.as_str()], &chain)?;
        rep.mats.insert(e.to_string(), m);
    }
    rep.fill_identities(d);

    let mut tau = BTreeMap::new();
    for ((a, b), ab) in &words.graded.product.product {
        let (ha, hb, hab) = (&cohom[a.as_str()], &cohom[b.as_str()], &cohom[ab.as_str()]);
        let (na, nb) = (degree(a), degree(b));
        let mut cross = Matrix::zeros(Q, hab.dim(), ha.dim() * hb.dim());
        for (i, ra) in ha.reps.iter().enumerate() {
            for (j, rb) in hb.reps.iter().enumerate() {
                let v =
                    cross_product(&tensors[a.as_str()], ra, na, &tensors[b.as_str()], rb, nb, &tensors[ab.as_str()])?;
                for (r, x) in hab.class_of(&v)?.into_iter().enumerate() {
                    cross.set(r, i * hb.dim() + j, x);
                }
            }
        }
        tau.insert((a.clone(), b.clone()), cross.inverse_or_err(&format!("cross product for ({a}, {b})"))?);
    }
    Ok(KunnethFixture { words, rep: GradedRepresentation { rep, tau } })
}

fn cross_product(
    ta: &Tensor,
    ra: &[Rational],
    na: usize,
    tb: &Tensor,
    rb: &[Rational],
    nb: usize,
    tab: &Tensor,
) -> Result<Vec<Rational>> {
    let mut out = vec![rat(0); tab.complex.dim(na + nb)];
    for (ka, oa) in &ta.blocks[na] {
        for (kb, ob) in &tb.blocks[nb] {
            let size_a = block_size(ta, na, ka);
            let size_b = block_size(tb, nb, kb);
            let k = [ka.clone(), kb.clone()].concat();
            let off = tab.offset(na + nb, &k).ok_or_else(|| Error::consistency("missing block in tensor complex"))?;
            for i in 0..size_a {
                for j in 0..size_b {
                    out[off + i * size_b + j] = &ra[oa + i] * &rb[ob + j];
                }
            }
        }
    }
    Ok(out)
}

fn block_size(t: &Tensor, n: usize, k: &[usize]) -> usize {
    let blocks = &t.blocks[n];
    let pos = blocks.iter().position(|b| b.0 == k).unwrap();
    let end = blocks.get(pos + 1).map_or(t.complex.dim(n), |b| b.1);
    end - blocks[pos].1
}

/// The chain map in degree `n` between the tensor complexes of an edge.
fn realize(
    fm: &FlatMap,
    src: &Tensor,
    dst: &Tensor,
    n: usize,
    leaves: &[Leaf],
    chain_maps: &[Vec<Matrix<Rationals>>],
) -> Result<Matrix<Rationals>> {
    let mut m = Matrix::zeros(Q, dst.complex.dim(n), src.complex.dim(n));
    let Some(blocks) = src.blocks.get(n) else { return Ok(m) };
    for (k, off) in blocks {
        match fm {
            FlatMap::Factors(f) => {
                let Some(dst_off) = dst.offset(n, k) else { continue };
                let piece = kron_all(k.iter().zip(f).zip(&src.factors).map(|((&kj, op), &leaf)| match op {
                    Some(e) => chain_maps[*e].get(kj).cloned().unwrap_or_else(|| Matrix::zeros(Q, 0, 0)),
                    None => Matrix::identity(Q, leaves[leaf].complex.dim(kj)),
                }));
                paste(&mut m, dst_off, *off, &piece);
            }
            FlatMap::Permute(p) => {
                let target: Vec<usize> = p.iter().map(|&s| k[s]).collect();
                let Some(dst_off) = dst.offset(n, &target) else { continue };
                let mut odd = false;
                for i in 0..p.len() {
                    for j in i + 1..p.len() {
                        if p[i] > p[j] && target[i] % 2 == 1 && target[j] % 2 == 1 {
                            odd = !odd;
                        }
                    }
                }
                let s = if odd { rat(-1) } else { rat(1) };
                let sizes: Vec<usize> = k.iter().zip(&src.factors).map(|(&kj, &l)| leaves[l].complex.dim(kj)).collect();
                let total: usize = sizes.iter().product();
                let tsizes: Vec<usize> = p.iter().map(|&s| sizes[s]).collect();
                for idx in 0..total {
                    let mut digits = vec![0; sizes.len()];
                    let mut rest = idx;
                    for j in (0..sizes.len()).rev() {
                        digits[j] = rest % sizes[j];
                        rest /= sizes[j];
                    }
                    let t = p.iter().zip(&tsizes).fold(0, |acc, (&s, &sz)| acc * sz + digits[s]);
                    m.set(dst_off + t, off + idx, s.clone());
                }
            }
        }
    }
    Ok(m)
}

/// Good-pair leaves used by the bundled odd-degree fixtures: two points (degree 0,
/// with their swap), the interval relative to its ends (degree 1), the circle
/// relative to a vertex (degree 1, with a reflection) and the 2-simplex relative
/// to its boundary (degree 2).
pub fn standard_leaves() -> (Vec<PairSpec>, Vec<MapSpec>) {
    use super::complex::Complex;
    let c = |m: &[&[usize]]| Complex::from_maximal(m).expect("valid complex");
    let pairs = vec![
        PairSpec { name: "s0".into(), x: c(&[&[0], &[1]]), y: Complex::empty(), degree: 0 },
        PairSpec { name: "i".into(), x: Complex::simplex(1), y: c(&[&[0], &[1]]), degree: 1 },
        PairSpec { name: "c".into(), x: Complex::simplex_boundary(2), y: Complex::point(), degree: 1 },
        PairSpec { name: "t".into(), x: Complex::simplex(2), y: Complex::simplex_boundary(2), degree: 2 },
    ];
    let maps = vec![
        MapSpec {
            name: "swap".into(),
            domain: "s0".into(),
            codomain: "s0".into(),
            vertex_map: [(0, 1), (1, 0)].into_iter().collect(),
        },
        MapSpec {
            name: "reflect".into(),
            domain: "c".into(),
            codomain: "c".into(),
            vertex_map: [(0, 0), (1, 2), (2, 1)].into_iter().collect(),
        },
    ];
    (pairs, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::comultiplication;
    use crate::diagram::{validate_graded, GradedCheckOptions, AXIOM_COMMUTATIVITY};

    fn subset(names: &[&str]) -> (Vec<PairSpec>, Vec<MapSpec>) {
        let (p, m) = standard_leaves();
        let p: Vec<PairSpec> = p.into_iter().filter(|x| names.contains(&x.name.as_str())).collect();
        let m = m.into_iter().filter(|x| names.contains(&x.domain.as_str())).collect();
        (p, m)
    }

    #[test]
    fn odd_leaves_satisfy_the_axioms() {
        for names in [&["i"][..], &["c", "s0"], &["i", "t"]] {
            let (p, m) = subset(names);
            let fx = kunneth_fixture(&p, &m, 2, SignRule::Literal).unwrap();
            let r = validate_graded(&fx.words.graded, &fx.rep, GradedCheckOptions::default());
            assert!(r.is_ok(), "{names:?}: {r}");
        }
    }

    #[test]
    fn odd_square_swaps_with_a_sign() {
        let (p, m) = subset(&["i"]);
        let fx = kunneth_fixture(&p, &m, 1, SignRule::Literal).unwrap();
        let a = fx.rep.rep.mat("alpha[i|i]").unwrap();
        assert_eq!(*a, Matrix::from_ints(&[&[-1]]));
        let mut bad = fx.rep.clone();
        bad.rep.mats.insert("alpha[i|i]".into(), a.neg());
        let r = validate_graded(&fx.words.graded, &bad, GradedCheckOptions::default());
        assert!(!r.passed(AXIOM_COMMUTATIVITY));
    }

    #[test]
    fn reflection_acts_by_minus_one() {
        let (p, m) = subset(&["c"]);
        let fx = kunneth_fixture(&p, &m, 1, SignRule::Literal).unwrap();
        assert_eq!(*fx.rep.rep.mat("reflect").unwrap(), Matrix::from_ints(&[&[-1]]));
        assert_eq!(fx.rep.rep.dim("(c*c)"), 1);
    }

    #[test]
    fn comultiplication_is_defined() {
        let (p, m) = subset(&["i", "s0"]);
        let fx = kunneth_fixture(&p, &m, 2, SignRule::Literal).unwrap();
        let small = fx.words.level(1).to_vec();
        let large = fx.words.level(2).to_vec();
        let b = comultiplication(&fx.words.graded, &fx.rep, &small, &large, None).unwrap();
        assert!(b.ok(), "{b:?}");
    }

    #[test]
    fn bad_leaf_is_rejected() {
        let (mut p, m) = subset(&["c"]);
        p[0].y = crate::simplicial::Complex::empty();
        assert!(kunneth_fixture(&p, &m, 1, SignRule::Literal).is_err());
    }
}
