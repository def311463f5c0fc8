//! Finite torsors given by ternary tables, the groups they determine and the
//! ternary operation `x y⁻¹ z` on invertible intertwiners.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::diagram::Representation;
use crate::endo::{hom_space, IntertwinerSpace};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::report::Report;

pub const TORSOR_TABLE: &str = "table";
pub const TORSOR_AXIOM_1: &str = "torsor-axiom1";
pub const TORSOR_AXIOM_2: &str = "torsor-axiom2";

/// A set `{0, …, n-1}` with a ternary operation; `table[(x * n + y) * n + z] = (x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTorsor {
    pub n: usize,
    pub table: Vec<usize>,
}

impl FiniteTorsor {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    table.push(f(x, y, z));
                }
            }
        }
        FiniteTorsor { n, table }
    }

    pub fn t(&self, x: usize, y: usize, z: usize) -> usize {
        self.table[(x * self.n + y) * self.n + z]
    }
}

pub fn check_torsor(x: &FiniteTorsor) -> Report {
    let mut r = Report::new();
    let n = x.n;
    if x.table.len() != n * n * n {
        r.push(TORSOR_TABLE, format!("table has {} entries, expected {}", x.table.len(), n * n * n));
        return r;
    }
    if let Some(bad) = x.table.iter().find(|&&v| v >= n) {
        r.push(TORSOR_TABLE, format!("entry {bad} is not an element"));
        return r;
    }
    for a in 0..n {
        for b in 0..n {
            r.require(x.t(a, b, b) == a, TORSOR_AXIOM_1, || format!("({a},{b},{b}) = {} ≠ {a}", x.t(a, b, b)));
            r.require(x.t(b, b, a) == a, TORSOR_AXIOM_1, || format!("({b},{b},{a}) = {} ≠ {a}", x.t(b, b, a)));
        }
    }
    let failures: Vec<String> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            for b in 0..n {
                for c in 0..n {
                    for u in 0..n {
                        for v in 0..n {
                            let l = x.t(x.t(a, b, c), u, v);
                            let m = x.t(a, x.t(u, c, b), v);
                            let rr = x.t(a, b, x.t(c, u, v));
                            if l != m || m != rr {
                                out.push(format!("quintuple ({a},{b},{c},{u},{v}) gives {l}, {m}, {rr}"));
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    for f in failures {
        r.push(TORSOR_AXIOM_2, f);
    }
    r
}

/// A finite group on `{0, …, n-1}` with `mul[g * n + h] = gh`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    pub n: usize,
    pub mul: Vec<usize>,
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Finds identity and inverses; fails if the table is not a group.
    pub fn from_table(n: usize, mul: Vec<usize>) -> Result<Self> {
        if mul.len() != n * n || mul.iter().any(|&x| x >= n) {
            return Err(Error::precondition("multiplication table is not total on the element set"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] == g && mul[g * n + e] == g))
            .ok_or_else(|| Error::precondition("no identity element"))?;
        let inverse = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| mul[g * n + h] == identity && mul[h * n + g] == identity)
                    .ok_or_else(|| Error::precondition(format!("element {g} has no inverse")))
            })
            .collect::<Result<_>>()?;
        let g = FiniteGroup { n, mul, identity, inverse };
        let r = g.check();
        if !r.is_ok() {
            return Err(Error::precondition(format!("not a group: {r}")));
        }
        Ok(g)
    }

    pub fn m(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.n + h]
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new();
        let n = self.n;
        for a in 0..n {
            r.require(self.m(self.identity, a) == a && self.m(a, self.identity) == a, "group-identity", || {
                format!("identity fails at {a}")
            });
            r.require(
                self.m(a, self.inverse[a]) == self.identity && self.m(self.inverse[a], a) == self.identity,
                "group-inverse",
                || format!("inverse fails at {a}"),
            );
            for b in 0..n {
                for c in 0..n {
                    r.require(self.m(self.m(a, b), c) == self.m(a, self.m(b, c)), "group-associativity", || {
                        format!("({a}{b}){c} ≠ {a}({b}{c})")
                    });
                }
            }
        }
        r
    }

    /// Whether `f` is a bijective homomorphism onto `other`.
    pub fn is_isomorphism(&self, other: &FiniteGroup, f: &[usize]) -> bool {
        let mut seen = vec![false; other.n];
        for &x in f {
            if x >= other.n || std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        self.n == other.n && (0..self.n).all(|a| (0..self.n).all(|b| f[self.m(a, b)] == other.m(f[a], f[b])))
    }
}

/// `(g, h, k) = g h⁻¹ k`.
pub fn torsor_from_group(g: &FiniteGroup) -> FiniteTorsor {
    FiniteTorsor::from_fn(g.n, |a, b, c| g.m(g.m(a, g.inverse[b]), c))
}

fn require_torsor(x: &FiniteTorsor) -> Result<()> {
    let r = check_torsor(x);
    if r.is_ok() {
        Ok(())
    } else {
        Err(Error::precondition(format!("not a torsor: {r}")))
    }
}

/// `G_e`: `gh = (g, e, h)`, `g⁻¹ = (e, g, e)`, with the round trip `(g,h,k) = g h⁻¹ k` verified.
pub fn group_at(x: &FiniteTorsor, e: usize) -> Result<FiniteGroup> {
    require_torsor(x)?;
    if e >= x.n {
        return Err(Error::precondition(format!("basepoint {e} is not an element")));
    }
    let n = x.n;
    let mut mul = Vec::with_capacity(n * n);
    for g in 0..n {
        for h in 0..n {
            mul.push(x.t(g, e, h));
        }
    }
    let g = FiniteGroup::from_table(n, mul)?;
    if (0..n).any(|a| g.inverse[a] != x.t(e, a, e)) {
        return Err(Error::consistency("inverse in G_e differs from (e, g, e)"));
    }
    if torsor_from_group(&g) != *x {
        return Err(Error::consistency("the torsor is not recovered as g h⁻¹ k in G_e"));
    }
    Ok(g)
}

/// One of the quotients `X²/∼` with its group structure and action on `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGroup {
    /// Class of the pair `(a, b)` at index `a * n + b`.
    pub class: Vec<usize>,
    pub group: FiniteGroup,
    /// `action[g * n + x]`: `g·x` for `Gˡ`, `x·g` for `Gʳ`.
    pub action: Vec<usize>,
    pub report: Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// `Gˡ` with `μ_l((a,b),(c,d)) = ((a,b,c),d)`, `(a,b) ∼ ((a,b,x),x)`, action `(a,b)x = (a,b,x)`;
/// `Gʳ` mirrored with `μ_r((a,b),(c,d)) = (a,(b,c,d))`, `(a,b) ∼ (x,(x,a,b))`, action `x(a,b) = (x,a,b)`.
pub fn pair_group(x: &FiniteTorsor, side: Side) -> Result<PairGroup> {
    require_torsor(x)?;
    let n = x.n;
    let idx = |a: usize, b: usize| a * n + b;
    // (a,b) composed with the diagonal pair (u,u)
    let shift = |a: usize, b: usize, u: usize| match side {
        Side::Left => (x.t(a, b, u), u),
        Side::Right => (u, x.t(u, a, b)),
    };
    let mut parent: Vec<usize> = (0..n * n).collect();
    for a in 0..n {
        for b in 0..n {
            for u in 0..n {
                let (c, d) = shift(a, b, u);
                let (p, q) = (find(&mut parent, idx(a, b)), find(&mut parent, idx(c, d)));
                parent[p] = q;
            }
        }
    }
    let mut roots: Vec<usize> = (0..n * n).map(|i| find(&mut parent, i)).collect();
    let mut ids: Vec<usize> = roots.clone();
    ids.sort_unstable();
    ids.dedup();
    for r in roots.iter_mut() {
        *r = ids.binary_search(r).unwrap();
    }
    let class = roots;
    let k = ids.len();
    let mut report = Report::new();

    // The generating relation is already an equivalence: each class is one orbit of `shift`.
    for a in 0..n {
        for b in 0..n {
            let orbit: std::collections::BTreeSet<usize> = (0..n)
                .map(|u| {
                    let (c, d) = shift(a, b, u);
                    idx(c, d)
                })
                .collect();
            let members = (0..n * n).filter(|&i| class[i] == class[idx(a, b)]).count();
            report.require(orbit.len() == members, "equivalence", || {
                format!("pair ({a},{b}) reaches {} of the {members} members of its class directly", orbit.len())
            });
        }
    }

    let compose = |a: usize, b: usize, c: usize, d: usize| match side {
        Side::Left => idx(x.t(a, b, c), d),
        Side::Right => idx(a, x.t(b, c, d)),
    };
    let mut mul = vec![usize::MAX; k * k];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let (g, h) = (class[idx(a, b)], class[idx(c, d)]);
                    let v = class[compose(a, b, c, d)];
                    let slot = &mut mul[g * k + h];
                    if *slot == usize::MAX {
                        *slot = v;
                    } else {
                        report.require(*slot == v, "well-defined-product", || {
                            format!("product of classes {g}, {h} depends on representatives")
                        });
                    }
                }
            }
        }
    }
    let mut action = vec![usize::MAX; k * n];
    for a in 0..n {
        for b in 0..n {
            for y in 0..n {
                let g = class[idx(a, b)];
                let v = match side {
                    Side::Left => x.t(a, b, y),
                    Side::Right => x.t(y, a, b),
                };
                let slot = &mut action[g * n + y];
                if *slot == usize::MAX {
                    *slot = v;
                } else {
                    report.require(*slot == v, "well-defined-action", || {
                        format!("action of class {g} on {y} depends on representatives")
                    });
                }
            }
        }
    }
    if !report.is_ok() {
        return Err(Error::consistency(format!("pair quotient: {report}")));
    }
    let group = FiniteGroup::from_table(k, mul)?;
    for y in 0..n {
        for z in 0..n {
            let movers = (0..k).filter(|&g| action[g * n + y] == z).count();
            report.require(movers == 1, "simply-transitive", || format!("{movers} classes move {y} to {z}"));
        }
    }
    for g in 0..k {
        for h in 0..k {
            for y in 0..n {
                let (gh, lhs, rhs) = match side {
                    Side::Left => (group.m(g, h), action[group.m(g, h) * n + y], action[g * n + action[h * n + y]]),
                    Side::Right => (group.m(g, h), action[group.m(g, h) * n + y], action[h * n + action[g * n + y]]),
                };
                report
                    .require(lhs == rhs, "action-law", || format!("class {gh} acts unlike the composite of {g}, {h}"));
            }
        }
    }
    report.require(k == n, "order", || format!("{k} classes for {n} elements"));
    for e in 0..n {
        let ge = group_at(x, e)?;
        let i_e: Vec<usize> = (0..n)
            .map(|y| match side {
                Side::Left => class[idx(y, e)],
                Side::Right => class[idx(e, y)],
            })
            .collect();
        report.require(ge.is_isomorphism(&group, &i_e), "basepoint-isomorphism", || {
            format!("i_{e} is not an isomorphism onto the pair group")
        });
        // the inverse rule (a,b) ↦ (a,b,e), resp. (e,a,b)
        for a in 0..n {
            for b in 0..n {
                let back = match side {
                    Side::Left => x.t(a, b, e),
                    Side::Right => x.t(e, a, b),
                };
                report.require(i_e[back] == class[idx(a, b)], "basepoint-inverse", || {
                    format!("class of ({a},{b}) is not recovered through {e}")
                });
            }
        }
    }
    Ok(PairGroup { class, group, action, report })
}

pub fn gl_group(x: &FiniteTorsor) -> Result<PairGroup> {
    pair_group(x, Side::Left)
}

pub fn gr_group(x: &FiniteTorsor) -> Result<PairGroup> {
    pair_group(x, Side::Right)
}

/// Small groups used as fixtures.
pub mod groups {
    use super::FiniteGroup;

    fn from_elements<T: PartialEq + Clone>(elems: &[T], op: impl Fn(&T, &T) -> T) -> FiniteGroup {
        let n = elems.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in elems {
            for b in elems {
                let c = op(a, b);
                mul.push(elems.iter().position(|x| *x == c).expect("closed under the operation"));
            }
        }
        FiniteGroup::from_table(n, mul).expect("fixture is a group")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        from_elements(&(0..n).collect::<Vec<_>>(), |a, b| (a + b) % n)
    }

    pub fn product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let elems: Vec<(usize, usize)> = (0..g.n).flat_map(|a| (0..h.n).map(move |b| (a, b))).collect();
        from_elements(&elems, |x, y| (g.m(x.0, y.0), h.m(x.1, y.1)))
    }

    /// Permutations of `{0,1,2}` under composition.
    pub fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        from_elements(&perms, |p, q| [p[q[0]], p[q[1]], p[q[2]]])
    }

    /// Symmetries of the square as `(rotation, reflection)`.
    pub fn dihedral4() -> FiniteGroup {
        let elems: Vec<(usize, bool)> = (0..4).flat_map(|r| [(r, false), (r, true)]).collect();
        from_elements(&elems, |&(r1, s1), &(r2, s2)| {
            let r = if s1 { (r1 + 4 - r2) % 4 } else { (r1 + r2) % 4 };
            (r, s1 ^ s2)
        })
    }

    /// `±1, ±i, ±j, ±k` as `(sign, unit)` with units `0 = 1, 1 = i, 2 = j, 3 = k`.
    pub fn quaternion() -> FiniteGroup {
        let elems: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
        from_elements(&elems, |&(s1, a), &(s2, b)| {
            let (neg, c) = match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            };
            (s1 ^ s2 ^ neg, c)
        })
    }

    /// Every group of order at most 8, up to isomorphism, with a name.
    pub fn up_to_eight() -> Vec<(&'static str, FiniteGroup)> {
        let c2 = cyclic(2);
        vec![
            ("C1", cyclic(1)),
            ("C2", cyclic(2)),
            ("C3", cyclic(3)),
            ("C4", cyclic(4)),
            ("C2xC2", product(&c2, &c2)),
            ("C5", cyclic(5)),
            ("C6", cyclic(6)),
            ("S3", symmetric3()),
            ("C7", cyclic(7)),
            ("C8", cyclic(8)),
            ("C4xC2", product(&cyclic(4), &c2)),
            ("C2xC2xC2", product(&product(&c2, &c2), &c2)),
            ("D4", dihedral4()),
            ("Q8", quaternion()),
        ]
    }
}

/// Point-level torsor checks on sampled intertwiners.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTorsorReport {
    pub dim_hom: usize,
    pub sampled: usize,
    pub invertible: usize,
    pub triples: usize,
    pub report: Report,
    /// No invertible intertwiner was found among the samples.
    pub inconclusive: bool,
}

impl MatrixTorsorReport {
    pub fn ok(&self) -> bool {
        !self.inconclusive && self.report.is_ok()
    }
}

pub const CLOSURE: &str = "closure";
pub const COORDINATE_FORMULA: &str = "coordinate-formula";

/// Coefficient vectors for sampling: the first half walks a grid of small
/// integers (sparse vectors first), the rest are dense seeded draws from `-3..=3`
/// so that invertible intertwiners are reached in high dimension too.
pub fn grid_coefficients(dim: usize, cap: usize) -> Vec<Vec<i64>> {
    const VALUES: [i64; 4] = [0, 1, -1, 2];
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    let sparse_cap = cap.div_ceil(2);
    let mut digits = vec![0usize; dim];
    'grid: while out.len() < sparse_cap {
        // increment the mixed-radix counter, last digit fastest
        let mut i = dim;
        loop {
            if i == 0 {
                break 'grid;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < VALUES.len() {
                break;
            }
            digits[i] = 0;
        }
        out.push(digits.iter().map(|&d| VALUES[d]).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(dim as u64);
    while out.len() < cap {
        out.push((0..dim).map(|_| rng.gen_range(-3..=3)).collect());
    }
    out
}

fn blocks_inverse<K: Field>(blocks: &[Matrix<K>]) -> Result<Option<Vec<Matrix<K>>>> {
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        if !b.is_square() {
            return Ok(None);
        }
        match b.inverse()? {
            Some(i) => out.push(i),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn ternary<K: Field>(x: &[Matrix<K>], yinv: &[Matrix<K>], z: &[Matrix<K>]) -> Result<Vec<Matrix<K>>> {
    x.iter().zip(yinv).zip(z).map(|((a, b), c)| a.mul(b)?.mul(c)).collect()
}

/// The entrywise sum `Σ_{k,l} x_ik (y⁻¹)_kl z_lj`.
fn ternary_entries<K: Field>(x: &Matrix<K>, yinv: &Matrix<K>, z: &Matrix<K>) -> Matrix<K> {
    let f = x.field();
    Matrix::from_fn(f.clone(), x.rows(), z.cols(), |i, j| {
        let mut acc = f.zero();
        for k in 0..x.cols() {
            for l in 0..yinv.cols() {
                acc = f.add(&acc, &f.mul(&f.mul(x.get(i, k), yinv.get(k, l)), z.get(l, j)));
            }
        }
        acc
    })
}

/// Samples intertwiners from a grid, keeps the invertible ones and checks
/// closure of `x y⁻¹ z`, the torsor axioms on the sampled points and the
/// coordinate formula, on at most `samples` triples (and as many quintuples).
pub fn matrix_torsor_check<K: Field, S: AsRef<str>>(
    d: &crate::diagram::Diagram,
    t1: &Representation<K>,
    t2: &Representation<K>,
    vertices: &[S],
    samples: usize,
) -> Result<MatrixTorsorReport> {
    let hom = hom_space(d, t1, t2, vertices)?;
    let candidates: Vec<Vec<K::Elem>> = grid_coefficients(hom.dim(), samples.max(8) * 4)
        .into_iter()
        .map(|c| c.into_iter().map(|v| hom.field.from_int(v)).collect())
        .collect();
    matrix_torsor_check_points(&hom, &candidates, samples)
}

/// As `matrix_torsor_check`, with caller-supplied coordinate vectors as samples.
pub fn matrix_torsor_check_points<K: Field>(
    hom: &IntertwinerSpace<K>,
    points: &[Vec<K::Elem>],
    samples: usize,
) -> Result<MatrixTorsorReport> {
    let all: Vec<Vec<Matrix<K>>> = points.iter().map(|c| hom.combination(c)).collect();
    let mut inv: Vec<(usize, Vec<Matrix<K>>)> = Vec::new();
    for (i, p) in all.iter().enumerate() {
        if let Some(q) = blocks_inverse(p)? {
            inv.push((i, q));
        }
    }
    let mut report = Report::new();
    let mut out = MatrixTorsorReport {
        dim_hom: hom.dim(),
        sampled: all.len(),
        invertible: inv.len(),
        triples: 0,
        report: Report::new(),
        inconclusive: inv.is_empty(),
    };
    if inv.is_empty() {
        return Ok(out);
    }
    let t = |x: &[Matrix<K>], y: usize, z: &[Matrix<K>]| ternary(x, &inv[y].1, z);
    let (na, ni) = (all.len(), inv.len());
    for s in 0..samples {
        let (xi, yi, zi) = (s % na, (s / na + s) % ni, (s * 7 + 3) % na);
        let (x, z) = (&all[xi], &all[zi]);
        let r = t(x, yi, z)?;
        report.require(hom.coordinates(&r).is_some(), CLOSURE, || format!("sample {s} leaves the intertwiner space"));
        for (b, blk) in r.iter().enumerate() {
            let direct = ternary_entries(&x[b], &inv[yi].1[b], &z[b]);
            report.require(direct == *blk, COORDINATE_FORMULA, || format!("sample {s}, block {b}"));
        }
        let y = &all[inv[yi].0];
        report.require(t(x, yi, y)? == *x && t(y, yi, x)? == *x, TORSOR_AXIOM_1, || {
            format!("(x,y,y) or (y,y,x) differs from x at sample {s}")
        });
        // five-variable axiom with y, z, u invertible
        let (zi2, ui) = ((s * 3 + 1) % ni, (s * 5 + 2) % ni);
        let (z2, u, v) = (&all[inv[zi2].0], &all[inv[ui].0], &all[(s * 11 + 5) % na]);
        let lhs = t(&t(x, yi, z2)?, ui, v)?;
        let uzy = t(u, zi2, y)?;
        let uzy_inv = blocks_inverse(&uzy)?.ok_or_else(|| Error::consistency("(u,z,y) is not invertible"))?;
        let mid = ternary(x, &uzy_inv, v)?;
        let rhs = t(x, yi, &t(z2, ui, v)?)?;
        report.require(lhs == mid && mid == rhs, TORSOR_AXIOM_2, || format!("five-variable axiom fails at sample {s}"));
        out.triples += 1;
    }
    out.report = report;
    Ok(out)
}
