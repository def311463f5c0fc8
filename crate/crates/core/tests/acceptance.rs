//! Acceptance suite: one line per criterion, exact arithmetic throughout.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use diagram_periods::bialgebra::comultiplication;
use diagram_periods::cli::{execute, Options};
use diagram_periods::diagram::{Diagram, GradedDiagram, GradedRepresentation, Representation, SignRule};
use diagram_periods::endo::{base_change, end_algebra, hom_space, restrict, EndAlgebra};
use diagram_periods::fixtures::{
    idempotent_line, random_diagram, random_invertible, random_representation, tensor_representation, tensor_words,
    transport, LeafDiagram, LeafRep,
};
use diagram_periods::io::{parse_diagram_doc, parse_json, AnyDiagramDoc, DiagramDoc};
use diagram_periods::linalg::{sign, swap_matrix, Field, Matrix, Rationals, SimpleExtension, Q};
use diagram_periods::localization::{
    chi_and_transitions, extend_representation, level_report, localize_diagram, twisted,
};
use diagram_periods::periods::{period_dimension_independent, period_space, psi};
use diagram_periods::rigidity::{
    generate_monoid, is_isometry, isometry_equations, isometry_inverse, monoid_is_group, random_signed_permutation,
    sample_isometries,
};
use diagram_periods::simplicial::{
    cech_total_complex, cohomology_dims, filtration_complex, kunneth_fixture, skeletal_filtration, standard_leaves,
    Complex,
};
use diagram_periods::torsor::{
    check_torsor, gl_group, gr_group, group_at, groups, matrix_torsor_check, torsor_from_group,
};

type Outcome = Result<String, String>;

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(fixtures_dir().join(name)).expect("bundled fixture");
    parse_json(&text).expect("bundled fixture parses")
}

fn generated(name: &str) -> AnyDiagramDoc {
    let out = execute("fixture", &load(name), &Options::default()).expect("fixture builds");
    parse_diagram_doc(&out.report).expect("emitted fixture parses")
}

/// Diagram documents shipped in the corpus plus those generated from simplicial specs.
fn bundled() -> Vec<(String, AnyDiagramDoc)> {
    let mut out: Vec<(String, AnyDiagramDoc)> =
        ["point.json", "a2_identity.json", "jordan_loop.json", "sqrt2_torsor.json"]
            .iter()
            .map(|n| (n.to_string(), parse_diagram_doc(&load(n)).expect("bundled diagram parses")))
            .collect();
    for n in ["interval_chain.json", "odd_words.json"] {
        out.push((n.to_string(), generated(n)));
    }
    out
}

struct Random {
    d: Diagram,
    t1: Representation<Rationals>,
    t2: Representation<Rationals>,
}

/// Randomized fixtures: at most 5 vertices, 8 edges and dimension 4. Every
/// other fixture has `T2` conjugate to `T1`, so that the Hom spaces are not all zero.
fn random_suite(count: usize) -> Vec<Random> {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_901);
    (0..count)
        .map(|i| {
            let nv = rng.gen_range(1..=5);
            let ne = rng.gen_range(0..=8);
            let d = random_diagram(&mut rng, nv, ne);
            let t1 = random_representation(&Q, &mut rng, &d, None, 4, 2);
            let t2 = if i % 2 == 0 {
                random_representation(&Q, &mut rng, &d, Some(&t1.dims), 4, 2)
            } else {
                let p: BTreeMap<String, Matrix<Rationals>> = d
                    .vertex_ids()
                    .into_iter()
                    .map(|v| (v.clone(), random_invertible(&Q, &mut rng, t1.dim(&v), 2)))
                    .collect();
                diagram_periods::simplicial::conjugate(&d, &t1, &p).expect("conjugation by invertible matrices")
            };
            Random { d, t1, t2 }
        })
        .collect()
}

fn ac1(suite: &[Random], bundled: &[(String, AnyDiagramDoc)]) -> Outcome {
    let start = Instant::now();
    let mut nontrivial = 0;
    for (i, r) in suite.iter().enumerate() {
        let vs = r.d.vertex_ids();
        let p = psi(&r.d, &r.t1, &r.t2, &vs).map_err(|e| format!("random #{i}: {e}"))?;
        let independent = period_dimension_independent(&r.d, &r.t1, &r.t2, &vs).map_err(|e| e.to_string())?;
        if p.dim_periods != p.dim_hom || independent != p.dim_hom || !p.bijective || !p.kills_relations {
            return Err(format!(
                "random #{i}: dim P = {} (independent {independent}), dim Hom = {}, bijective {}",
                p.dim_periods, p.dim_hom, p.bijective
            ));
        }
        nontrivial += usize::from(p.dim_hom > 0);
    }
    fn check<K: Field>(name: &str, doc: &DiagramDoc<K>) -> Result<(), String> {
        let t1 = doc.rep(0).map_err(|e| e.to_string())?;
        let t2 = doc.rep(1).unwrap_or(t1);
        let vs = doc.diagram.vertex_ids();
        let p = psi(&doc.diagram, t1, t2, &vs).map_err(|e| format!("{name}: {e}"))?;
        if p.dim_periods != p.dim_hom || !p.bijective {
            return Err(format!("{name}: dim P = {}, dim Hom = {}", p.dim_periods, p.dim_hom));
        }
        Ok(())
    }
    for (name, doc) in bundled {
        match doc {
            AnyDiagramDoc::Rationals(d) => {
                check(name, d)?;
                let t1 = d.rep(0).map_err(|e| e.to_string())?;
                let t2 = d.rep(1).unwrap_or(t1);
                let vs = d.diagram.vertex_ids();
                let ind = period_dimension_independent(&d.diagram, t1, t2, &vs).map_err(|e| e.to_string())?;
                let hom = hom_space(&d.diagram, t1, t2, &vs).map_err(|e| e.to_string())?.dim();
                if ind != hom {
                    return Err(format!("{name}: independent rank gives {ind}, Hom has {hom}"));
                }
            }
            AnyDiagramDoc::Extension(d) => check(name, d)?,
        }
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 60.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!(
        "{} random fixtures ({nontrivial} with Hom ≠ 0) and {} bundled fixtures, {secs:.2} s",
        suite.len(),
        bundled.len()
    ))
}

/// Intertwining, closure with the stated structure constants, and algebra and coalgebra laws.
fn check_end<K: Field>(d: &Diagram, t: &Representation<K>, a: &EndAlgebra<K>) -> Result<(), String> {
    let s = &a.space;
    let elems: Vec<Vec<Matrix<K>>> = (0..a.dim()).map(|i| s.element(i)).collect();
    let at = |x: &[Matrix<K>], v: &str| x[s.layout.block(v).unwrap()].clone();
    for (k, x) in elems.iter().enumerate() {
        for (e, edge) in d.edges() {
            let m = t.mat(e).map_err(|e| e.to_string())?;
            let lhs = m.mul(&at(x, &edge.src)).map_err(|e| e.to_string())?;
            let rhs = at(x, &edge.dst).mul(m).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("basis element {k} does not commute with {e}"));
            }
        }
    }
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let prod: Vec<Matrix<K>> =
                elems[i].iter().zip(&elems[j]).map(|(x, y)| x.mul(y).expect("square blocks")).collect();
            if s.combination(&a.mult.column(i * n + j)) != prod {
                return Err(format!("e{i} e{j} differs from its structure constants"));
            }
        }
    }
    let laws = a.check_laws();
    let co = a.coalgebra().check_laws();
    if !(laws.associative && laws.unital && co.associative && co.unital) {
        return Err(format!("algebra laws {laws:?}, coalgebra laws {co:?}"));
    }
    for v in s.layout.vertices.iter() {
        let c = a.check_coaction(v).map_err(|e| e.to_string())?;
        if !(c.counit && c.coassociative) {
            return Err(format!("coaction at {v}: {c:?}"));
        }
    }
    Ok(())
}

fn ac2(suite: &[Random]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut restrictions = 0;
    for (i, r) in suite.iter().enumerate() {
        let vs = r.d.vertex_ids();
        for t in [&r.t1, &r.t2] {
            let a = end_algebra(&r.d, t, &vs).map_err(|e| e.to_string())?;
            check_end(&r.d, t, &a).map_err(|e| format!("random #{i}: {e}"))?;
            let sub: Vec<String> = vs.iter().filter(|_| rng.gen_bool(0.6)).cloned().collect();
            if sub.is_empty() {
                continue;
            }
            let small = end_algebra(&r.d, t, &sub).map_err(|e| e.to_string())?;
            let res = restrict(&small, &a).map_err(|e| format!("random #{i}: {e}"))?;
            if !(res.algebra_morphism && res.coalgebra_morphism) {
                return Err(format!("random #{i}: restriction to {sub:?} is not a (co)algebra morphism"));
            }
            restrictions += 1;
        }
    }
    Ok(format!("{} End algebras, {restrictions} restrictions", 2 * suite.len()))
}

/// An odd vertex `x` with `T(x) ≠ 0` whose commutativity constraint carries the sign −1.
fn has_koszul_sign(gd: &GradedDiagram, t: &GradedRepresentation<Rationals>, vertices: &[String]) -> bool {
    vertices.iter().any(|x| {
        let odd = gd.diagram.grade(x) == Some(true) && t.rep.dim(x) > 0;
        let Some(e) = gd.product.alpha.get(&(x.clone(), x.clone())) else { return false };
        let n = t.rep.dim(x);
        let (Ok(tau), Ok(m)) = (t.tau(x, x), t.rep.mat(e)) else { return false };
        let conj = tau.mul(m).and_then(|y| y.mul(&tau.inverse_or_err("tau").unwrap()));
        odd && conj.is_ok_and(|c| c == swap_matrix(&Q, n, n).scale(&sign(&Q, true)) && c != swap_matrix(&Q, n, n))
    })
}

fn ac3() -> Outcome {
    let mut checked = 0;
    let mut odd = 0;
    let mut run = |name: &str,
                   gd: &GradedDiagram,
                   t: &GradedRepresentation<Rationals>,
                   levels: [&[String]; 3]|
     -> Result<(), String> {
        let b = comultiplication(gd, t, levels[0], levels[1], Some(levels[2])).map_err(|e| format!("{name}: {e}"))?;
        let ok = b.ok()
            && b.well_defined
            && b.cocommutative
            && b.coassociative == Some(true)
            && b.counit_left == Some(true)
            && b.counit_right == Some(true);
        if !ok {
            return Err(format!(
                "{name}: {:?}",
                (b.well_defined, b.cocommutative, b.coassociative, b.counit_left, b.counit_right, b.graded.to_string())
            ));
        }
        checked += 1;
        odd += usize::from(has_koszul_sign(gd, t, levels[0]));
        Ok(())
    };
    let (gd, t) = idempotent_line(&Q);
    let f = vec!["f".to_string()];
    run("idempotent line", &gd, &t, [&f, &f, &f])?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..4 {
        let ld = LeafDiagram {
            leaves: vec![("a".into(), false), ("b".into(), true)],
            edges: vec![("g".into(), "a".into(), "a".into()), ("h".into(), "b".into(), "b".into())],
        };
        // one-dimensional leaves keep the depth-two chain small enough to solve exactly
        let (da, db) = (1, 1);
        let leaf = LeafRep {
            dims: vec![da, db],
            mats: vec![random_invertible(&Q, &mut rng, da, 3), random_invertible(&Q, &mut rng, db, 3)],
        };
        let fx = tensor_words(&ld, 2, SignRule::Literal).map_err(|e| e.to_string())?;
        let t = tensor_representation(&fx, &Q, &leaf).map_err(|e| e.to_string())?;
        let t = transport(&fx.graded, &t, &mut rng, true).map_err(|e| e.to_string())?;
        run(&format!("tensor words #{seed}"), &fx.graded, &t, [fx.level(0), fx.level(1), fx.level(2)])?;
    }

    let (pairs, maps) = standard_leaves();
    for names in [&["i"][..], &["c", "s0"], &["i", "t"], &["i", "c"]] {
        let p: Vec<_> = pairs.iter().filter(|x| names.contains(&x.name.as_str())).cloned().collect();
        let m: Vec<_> = maps.iter().filter(|x| names.contains(&x.domain.as_str())).cloned().collect();
        let fx = kunneth_fixture(&p, &m, 2, SignRule::Literal).map_err(|e| e.to_string())?;
        let w = &fx.words;
        run(&format!("cohomology words {names:?}"), &w.graded, &fx.rep, [w.level(0), w.level(1), w.level(2)])?;
    }
    if odd < 3 {
        return Err(format!("only {odd} fixtures with a nontrivial Koszul sign"));
    }
    Ok(format!("{checked} graded fixtures, {odd} with odd vertices carrying the Koszul sign"))
}

fn ac4(suite: &[Random]) -> Outcome {
    let fields = [("Q(i)", SimpleExtension::gaussian()), ("Q(sqrt2)", SimpleExtension::sqrt2())];
    let n = suite.len().min(60);
    for (name, k) in &fields {
        for (i, r) in suite.iter().take(n).enumerate() {
            let b = base_change(&r.d, &r.t1, &r.d.vertex_ids(), k).map_err(|e| e.to_string())?;
            if !b.ok() {
                return Err(format!("{name}, random #{i}: {b:?}"));
            }
        }
    }
    Ok(format!("{n} fixtures over each of Q(i), Q(sqrt2)"))
}

fn ac5() -> Outcome {
    let gs = groups::up_to_eight();
    for (name, g) in &gs {
        let x = torsor_from_group(g);
        let r = check_torsor(&x);
        if !r.is_ok() {
            return Err(format!("{name}: {r}"));
        }
        let back = group_at(&x, g.identity).map_err(|e| format!("{name}: {e}"))?;
        if back.mul != g.mul {
            return Err(format!("{name}: round trip changed the table"));
        }
        for e in 0..x.n {
            group_at(&x, e).map_err(|e| format!("{name}: {e}"))?;
        }
        for side in [gl_group(&x), gr_group(&x)] {
            let pg = side.map_err(|e| format!("{name}: {e}"))?;
            if !pg.report.is_ok() || pg.group.n != x.n {
                return Err(format!("{name}: {}", pg.report));
            }
        }
    }
    let mut matrix = Vec::new();
    let mut push = |name: &str,
                    r: diagram_periods::error::Result<diagram_periods::torsor::MatrixTorsorReport>|
     -> Result<(), String> {
        let r = r.map_err(|e| format!("{name}: {e}"))?;
        if !r.ok() || r.triples < 100 {
            return Err(format!("{name}: {} triples, {}", r.triples, r.report));
        }
        matrix.push(r.triples);
        Ok(())
    };
    for (name, doc) in bundled() {
        match &doc {
            AnyDiagramDoc::Rationals(d) if d.reps.len() >= 2 => push(
                &name,
                matrix_torsor_check(&d.diagram, &d.reps[0].rep, &d.reps[1].rep, &d.diagram.vertex_ids(), 100),
            )?,
            AnyDiagramDoc::Extension(d) if d.reps.len() >= 2 => push(
                &name,
                matrix_torsor_check(&d.diagram, &d.reps[0].rep, &d.reps[1].rep, &d.diagram.vertex_ids(), 100),
            )?,
            _ => {}
        }
    }
    for r in random_suite(40).iter().skip(1).step_by(2).take(10) {
        if hom_space(&r.d, &r.t1, &r.t2, &r.d.vertex_ids()).map_err(|e| e.to_string())?.dim() > 0 {
            push("random conjugate", matrix_torsor_check(&r.d, &r.t1, &r.t2, &r.d.vertex_ids(), 100))?;
        }
    }
    Ok(format!(
        "{} groups of order ≤ 8 exhaustively; {} matrix fixtures with ≥ {} triples each",
        gs.len(),
        matrix.len(),
        matrix.iter().min().copied().unwrap_or(0)
    ))
}

fn ac6() -> Outcome {
    let forms = [
        ("I2", Matrix::from_ints(&[&[1, 0], &[0, 1]])),
        ("J", Matrix::from_ints(&[&[0, 1], &[-1, 0]])),
        ("diag(1,2)", Matrix::from_ints(&[&[1, 0], &[0, 2]])),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sampled = 0;
    for (name, a) in &forms {
        let eqs = isometry_equations(a).map_err(|e| e.to_string())?;
        let xs = sample_isometries(a, &mut rng, 30).map_err(|e| e.to_string())?;
        if xs.len() < 10 {
            return Err(format!("{name}: only {} samples", xs.len()));
        }
        for x in &xs {
            let id = Matrix::identity(Q, 2);
            let y = isometry_inverse(a, x).map_err(|e| e.to_string())?;
            let ok = is_isometry(a, x).unwrap_or(false)
                && eqs.iter().all(|p| Q.is_zero(&p.evaluate(&Q, x)))
                && y.mul(x).is_ok_and(|m| m == id)
                && x.mul(&y).is_ok_and(|m| m == id);
            if !ok {
                return Err(format!("{name}: sample {x:?} fails"));
            }
            sampled += 1;
        }
    }
    let mut monoids = 0;
    let mut gens: Vec<Vec<Matrix<Rationals>>> = Vec::new();
    for n in 1..=3 {
        for _ in 0..30 {
            let g = random_signed_permutation(&Q, &mut rng, n);
            let h = random_signed_permutation(&Q, &mut rng, n);
            gens.push(vec![g.clone()]);
            gens.push(vec![g, h]);
        }
    }
    gens.push(vec![Matrix::from_ints(&[&[0, -1], &[1, -1]])]);
    gens.push(vec![Matrix::from_ints(&[&[0, -1], &[1, 1]])]);
    gens.push(vec![Matrix::from_ints(&[&[0, -1], &[1, 1]]), Matrix::from_ints(&[&[0, 1], &[1, 0]])]);
    for g in &gens {
        let Some(m) = generate_monoid(g, 24).map_err(|e| e.to_string())? else { continue };
        let v = monoid_is_group(&m).map_err(|e| e.to_string())?;
        if !v.is_group {
            return Err(format!("monoid of order {} generated by {g:?} is not a group", m.len()));
        }
        monoids += 1;
    }
    Ok(format!("{sampled} sampled isometries over 3 forms; {monoids} generated monoids of order ≤ 24"))
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex {
    let n = rng.gen_range(4..=7);
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if rng.gen_bool(0.25) {
                    maximal.push(vec![a, b, c]);
                }
            }
            if rng.gen_bool(0.15) {
                maximal.push(vec![a, b]);
            }
        }
    }
    if !maximal.iter().any(|s| s.len() == 3) {
        maximal.push(vec![0, 1, 2]);
    }
    Complex::from_maximal(&maximal).expect("faces of a simplex list")
}

fn cover_of(x: &Complex, rng: &mut ChaCha8Rng, parts: usize) -> Vec<Complex> {
    let mut groups = vec![Vec::new(); parts];
    for (i, s) in x.maximal().into_iter().enumerate() {
        let k = if i < parts { i } else { rng.gen_range(0..parts) };
        groups[k].push(s);
    }
    groups.into_iter().filter(|g| !g.is_empty()).map(|g| Complex::from_maximal(&g).expect("faces")).collect()
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<(String, Complex)> = vec![
        ("interval".into(), Complex::simplex(1)),
        ("boundary of a triangle".into(), Complex::simplex_boundary(2)),
        ("triangle".into(), Complex::simplex(2)),
        ("boundary of a tetrahedron".into(), Complex::simplex_boundary(3)),
    ];
    for i in 0..24 {
        cases.push((format!("random #{i}"), random_complex(&mut rng)));
    }
    let empty = Complex::empty();
    let mut covers = 0;
    for (name, x) in &cases {
        let direct = cohomology_dims(x, &empty).map_err(|e| e.to_string())?;
        let filt = skeletal_filtration(x).map_err(|e| e.to_string())?;
        let via = filtration_complex(&filt).and_then(|c| c.betti()).map_err(|e| format!("{name}: {e}"))?;
        if via != direct {
            return Err(format!("{name}: filtration gives {via:?}, direct {direct:?}"));
        }
        for parts in 1..=3 {
            let cover = cover_of(x, &mut rng, parts);
            let total = cech_total_complex(x, &empty, &cover).map_err(|e| format!("{name}: {e}"))?;
            let b = total.betti().map_err(|e| e.to_string())?;
            let agree = total.is_complex()
                && b.iter().zip(&direct).all(|(p, q)| p == q)
                && b.iter().skip(direct.len()).all(|&v| v == 0);
            if !agree {
                return Err(format!("{name}: Čech gives {b:?}, direct {direct:?}"));
            }
            covers += 1;
        }
    }
    let circle_start = Instant::now();
    let out = execute("cech", &load("circle.json"), &Options::default()).map_err(|e| e.to_string())?;
    let circle_secs = circle_start.elapsed().as_secs_f64();
    if out.exit_code() != 0 || out.report["cech"][1] != serde_json::json!(1) || circle_secs >= 10.0 {
        return Err(format!("two-arc cover of the circle: {} ({circle_secs:.2} s)", out.report));
    }
    Ok(format!(
        "{} complexes ({} random), {covers} covers; circle two-arc cover H¹ = 1 in {circle_secs:.3} s; total {:.2} s",
        cases.len(),
        cases.len() - 4,
        start.elapsed().as_secs_f64()
    ))
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ld = LeafDiagram {
        leaves: vec![("a".into(), false), ("l".into(), false), ("o".into(), true)],
        edges: vec![("g".into(), "a".into(), "a".into()), ("h".into(), "a".into(), "l".into())],
    };
    let mut localized = 0;
    for seed in 0..3 {
        let leaf = LeafRep {
            dims: vec![2, 1, 1],
            mats: vec![
                random_invertible(&Q, &mut rng, 2, 2),
                Matrix::from_ints(&[&[rng.gen_range(1..=3), rng.gen_range(-2..=2)]]),
            ],
        };
        let fx = tensor_words(&ld, 1, SignRule::Literal).map_err(|e| e.to_string())?;
        let t = tensor_representation(&fx, &Q, &leaf).map_err(|e| e.to_string())?;
        let t = if seed == 0 { t } else { transport(&fx.graded, &t, &mut rng, true).map_err(|e| e.to_string())? };
        {
            let (small, large) = (fx.level(0), fx.level(1));
            let tr = chi_and_transitions(&fx.graded, &t, "l", small, large).map_err(|e| e.to_string())?;
            if !tr.agrees {
                return Err(format!("seed {seed}: transition differs from multiplication by χ"));
            }
        }
        for bound in 0..=3 {
            let loc = localize_diagram(&fx.graded, "l", bound).map_err(|e| e.to_string())?;
            let ext = extend_representation(&loc, &t).map_err(|e| e.to_string())?;
            let lv = level_report(&loc, &ext, fx.level(0)).map_err(|e| e.to_string())?;
            if !(lv.twists_invertible && lv.dims_constant) {
                return Err(format!("seed {seed}, N = {bound}: {lv:?}"));
            }
            let at0 = |vs: &[String]| vs.iter().map(|v| twisted(v, 0)).collect::<Vec<_>>();
            let tr = chi_and_transitions(&loc.graded, &ext, &twisted("l", 0), &at0(fx.level(0)), &at0(fx.level(1)))
                .map_err(|e| format!("seed {seed}, N = {bound}: {e}"))?;
            if !tr.agrees {
                return Err(format!("seed {seed}, N = {bound}: transition on the localized diagram differs from χ"));
            }
            localized += 1;
        }
    }
    Ok(format!("{localized} localized fixtures with N ≤ 3"))
}

fn ac9(suite: &[Random], bundled: &[(String, AnyDiagramDoc)]) -> Outcome {
    fn same<K: Field>(name: &str, d: &Diagram, t: &Representation<K>) -> Result<(), String> {
        let vs = d.vertex_ids();
        let p = period_space(d, t, t, &vs).map_err(|e| e.to_string())?.dim();
        let a = end_algebra(d, t, &vs).map_err(|e| e.to_string())?;
        if p != a.dim() || a.coalgebra().dim() != p {
            return Err(format!("{name}: dim P(T,T) = {p}, dim End = {}", a.dim()));
        }
        Ok(())
    }
    for (i, r) in suite.iter().enumerate() {
        same(&format!("random #{i}"), &r.d, &r.t1)?;
    }
    for (name, doc) in bundled {
        match doc {
            AnyDiagramDoc::Rationals(d) => {
                for t in &d.reps {
                    same(name, &d.diagram, &t.rep)?;
                }
            }
            AnyDiagramDoc::Extension(d) => {
                for t in &d.reps {
                    same(name, &d.diagram, &t.rep)?;
                }
            }
        }
    }
    Ok(format!("{} random and {} bundled fixtures", suite.len(), bundled.len()))
}

fn main() -> ExitCode {
    let suite = random_suite(220);
    let bundled = bundled();
    type Criterion<'a> = (&'a str, &'a str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("AC1", "Ψ is an isomorphism", Box::new(|| ac1(&suite, &bundled))),
        ("AC2", "End and coalgebra laws", Box::new(|| ac2(&suite))),
        ("AC3", "bialgebra laws", Box::new(ac3)),
        ("AC4", "base change", Box::new(|| ac4(&suite))),
        ("AC5", "torsors", Box::new(ac5)),
        ("AC6", "rigidity", Box::new(ac6)),
        ("AC7", "filtration and Čech complexes", Box::new(ac7)),
        ("AC8", "localization", Box::new(ac8)),
        ("AC9", "equal representations", Box::new(|| ac9(&suite, &bundled))),
    ];
    let mut failed = 0;
    for (id, title, f) in &criteria {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {id} {title}: {detail} [{secs:.2} s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id} {title}: {detail} [{secs:.2} s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
