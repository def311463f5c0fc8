//! Command dispatch shared by the binary and the C interface.
//!
//! Every command reads one JSON document and produces a JSON report plus a
//! verdict. Exit statuses: 0 for success or a true verdict, 1 for a false
//! verdict, 2 for a fault in the input.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::bialgebra::comultiplication;
use crate::diagram::{
    validate_diagram, validate_graded, validate_representation, GradedCheckOptions, GradedRepresentation, SignRule,
};
use crate::endo::{end_algebra, hom_space, IntertwinerSpace};
use crate::error::{Error, Result};
use crate::io::{
    check_format, emit_diagram_doc, emit_matrix, parse_complex_doc, parse_diagram_doc, parse_field, parse_fixture_doc,
    parse_matrix, parse_torsor, AnyDiagramDoc, Codec, DiagramDoc, FieldSpec,
};
use crate::linalg::{Matrix, Q};
use crate::localization::{chi_and_transitions, extend_representation, level_report, localize_diagram};
use crate::periods::{coactions, period_space, psi};
use crate::report::Report;
use crate::rigidity::{
    distinct_equations, generate_monoid, is_isometry, isometry_equations, monoid_is_group, perfect_duality_check,
    sample_isometries,
};
use crate::simplicial::{
    cech_total_complex, cohomology_dims, conjugate, filtration_complex, is_good_pair, kunneth_fixture,
    make_diagram_fixture, relative_cochains, skeletal_filtration,
};
use crate::torsor::{check_torsor, gl_group, gr_group, matrix_torsor_check};

pub const COMMANDS: &[&str] = &[
    "validate",
    "endo",
    "coalgebra",
    "bialgebra",
    "localize",
    "hom",
    "periods",
    "psi-check",
    "torsor-check",
    "matrix-torsor",
    "rigidity",
    "monoid-group",
    "cohomology",
    "cech",
    "filtration",
    "fixture",
];

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_FAULT: i32 = 2;

/// Options shared by the commands; each command reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub vertices: Option<Vec<String>>,
    pub small: Option<Vec<String>>,
    pub large: Option<Vec<String>>,
    pub chain: Option<Vec<String>>,
    pub f0: Option<String>,
    pub bound: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub degree: Option<usize>,
    pub cap: Option<usize>,
    pub proof_sign_rule: bool,
}

impl Options {
    /// Reads options from a JSON object with the same member names.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = match v {
            Value::Null => return Ok(Options::default()),
            v => crate::io::object(v, "")?,
        };
        let list = |k: &str| -> Result<Option<Vec<String>>> {
            obj.get(k)
                .map(|v| {
                    crate::io::array(v, &format!("/{k}"))?
                        .iter()
                        .enumerate()
                        .map(|(i, s)| crate::io::string(s, &format!("/{k}/{i}")).map(str::to_string))
                        .collect()
                })
                .transpose()
        };
        let num = |k: &str| obj.get(k).map(|v| crate::io::count(v, &format!("/{k}"))).transpose();
        for k in obj.keys() {
            let known =
                ["vertices", "small", "large", "chain", "f0", "bound", "samples", "seed", "degree", "cap", "sign_rule"];
            if !known.contains(&k.as_str()) {
                return Err(Error::schema(format!("/{k}"), "unknown option"));
            }
        }
        Ok(Options {
            vertices: list("vertices")?,
            small: list("small")?,
            large: list("large")?,
            chain: list("chain")?,
            f0: obj.get("f0").map(|v| crate::io::string(v, "/f0").map(str::to_string)).transpose()?,
            bound: num("bound")?,
            samples: num("samples")?,
            seed: num("seed")?.map(|s| s as u64),
            degree: num("degree")?,
            cap: num("cap")?,
            proof_sign_rule: match obj.get("sign_rule").map(|v| crate::io::string(v, "/sign_rule")).transpose()? {
                None | Some("literal") => false,
                Some("proof") => true,
                Some(other) => return Err(Error::schema("/sign_rule", format!("unknown sign rule {other:?}"))),
            },
        })
    }

    fn sign_rule(&self) -> SignRule {
        if self.proof_sign_rule {
            SignRule::ProofVariant
        } else {
            SignRule::Literal
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.unwrap_or(0))
    }
}

/// A report with its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub verdict: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, verdict: true }
    }

    fn verdict(report: Value, verdict: bool) -> Self {
        Outcome { report, verdict }
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            EXIT_OK
        } else {
            EXIT_FALSE
        }
    }
}

/// Runs a command on a parsed document.
pub fn execute(command: &str, input: &Value, opts: &Options) -> Result<Outcome> {
    match command {
        "torsor-check" => torsor_command(input),
        "rigidity" => rigidity_command(input, opts),
        "monoid-group" => monoid_command(input, opts),
        "cohomology" | "cech" | "filtration" => complex_command(command, input, opts),
        "fixture" => fixture_command(input),
        c if COMMANDS.contains(&c) => match parse_diagram_doc(input)? {
            AnyDiagramDoc::Rationals(d) => diagram_command(c, &d, opts),
            AnyDiagramDoc::Extension(d) => diagram_command(c, &d, opts),
        },
        other => {
            Err(Error::precondition(format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", "))))
        }
    }
}

/// Runs a command on JSON text and returns the exit status and the JSON to print.
pub fn run_text(command: &str, text: &str, opts: &Options) -> (i32, Value) {
    match crate::io::parse_json(text).and_then(|v| execute(command, &v, opts)) {
        Ok(o) => (o.exit_code(), o.report),
        Err(e) => (EXIT_FAULT, json!({ "error": e.to_string() })),
    }
}

fn report_json(r: &Report) -> Value {
    r.violations.iter().map(|v| json!({"check": v.check, "detail": v.detail})).collect()
}

fn elems<K: Codec>(f: &K, v: &[K::Elem]) -> Value {
    v.iter().map(|x| f.emit_elem(x)).collect()
}

fn space_basis<K: Codec>(s: &IntertwinerSpace<K>) -> Value {
    (0..s.dim())
        .map(|i| {
            let blocks = s.element(i);
            Value::Object(s.layout.vertices.iter().zip(&blocks).map(|(v, m)| (v.clone(), emit_matrix(m))).collect())
        })
        .collect()
}

fn vertex_list<K: crate::linalg::Field>(doc: &DiagramDoc<K>, chosen: &Option<Vec<String>>) -> Vec<String> {
    chosen.clone().unwrap_or_else(|| doc.diagram.vertex_ids())
}

fn required<'o>(v: &'o Option<Vec<String>>, name: &str) -> Result<&'o [String]> {
    v.as_deref().ok_or_else(|| Error::precondition(format!("option --{name} is required")))
}

fn diagram_command<K: Codec>(command: &str, doc: &DiagramDoc<K>, opts: &Options) -> Result<Outcome> {
    let d = &doc.diagram;
    let f = &doc.field;
    let vs = vertex_list(doc, &opts.vertices);
    match command {
        "validate" => {
            let mut r = validate_diagram(d);
            for (i, t) in doc.reps.iter().enumerate() {
                let mut ri = validate_representation(d, &t.rep);
                if ri.is_ok() && doc.product.is_some() && !t.tau.is_empty() {
                    let (gd, _) = doc.graded(i)?;
                    ri = validate_graded(
                        &gd,
                        t,
                        GradedCheckOptions { sign_rule: opts.sign_rule(), require_total: false },
                    );
                }
                for v in &mut ri.violations {
                    v.detail = format!("representation {i}: {}", v.detail);
                }
                r.merge(ri);
            }
            let ok = r.is_ok();
            Ok(Outcome::verdict(json!({"valid": ok, "violations": report_json(&r)}), ok))
        }
        "endo" => {
            let a = end_algebra(d, doc.rep(0)?, &vs)?;
            let laws = a.check_laws();
            Ok(Outcome::verdict(
                json!({
                    "dim": a.dim(),
                    "basis": space_basis(&a.space),
                    "unit": elems(f, &a.unit),
                    "structure_constants": emit_matrix(&a.mult),
                    "associative": laws.associative,
                    "unital": laws.unital,
                }),
                laws.associative && laws.unital,
            ))
        }
        "coalgebra" => {
            let a = end_algebra(d, doc.rep(0)?, &vs)?;
            let c = a.coalgebra();
            let laws = c.check_laws();
            let mut coactions_ok = true;
            let mut per_vertex = Map::new();
            for v in &vs {
                let l = a.check_coaction(v)?;
                coactions_ok &= l.counit && l.coassociative;
                per_vertex.insert(
                    v.clone(),
                    json!({"matrix": emit_matrix(&a.coaction(v)?), "counit": l.counit, "coassociative": l.coassociative}),
                );
            }
            let ok = laws.associative && laws.unital && coactions_ok;
            Ok(Outcome::verdict(
                json!({
                    "dim": c.dim(),
                    "comultiplication": emit_matrix(&c.comult),
                    "counit": elems(f, &c.counit),
                    "coassociative": laws.associative,
                    "counital": laws.unital,
                    "coactions": per_vertex,
                }),
                ok,
            ))
        }
        "bialgebra" => {
            let (gd, t) = doc.graded(0)?;
            let small = required(&opts.small, "small")?;
            let large = required(&opts.large, "large")?;
            let b = comultiplication(&gd, t, small, large, opts.chain.as_deref())?;
            let ok = b.ok();
            Ok(Outcome::verdict(
                json!({
                    "dim_small": b.dim_small,
                    "dim_large": b.dim_large,
                    "comultiplication": emit_matrix(&b.comultiplication),
                    "restriction": emit_matrix(&b.restriction),
                    "counit": b.counit.as_ref().map(|c| elems(f, c)),
                    "graded_violations": report_json(&b.graded),
                    "well_defined": b.well_defined,
                    "cocommutative": b.cocommutative,
                    "counit_left": b.counit_left,
                    "counit_right": b.counit_right,
                    "coassociative": b.coassociative,
                    "commutative": b.commutative(),
                    "ok": ok,
                }),
                ok,
            ))
        }
        "localize" => {
            let product =
                doc.product.clone().ok_or_else(|| Error::schema("/product", "localize needs a product structure"))?;
            let gd = crate::diagram::GradedDiagram { diagram: d.clone(), product };
            let f0 = opts.f0.as_deref().ok_or_else(|| Error::precondition("option --f0 is required"))?;
            let loc = localize_diagram(&gd, f0, opts.bound.unwrap_or(1))?;
            let mut reps = Vec::new();
            let mut report = Map::new();
            let mut verdict = true;
            if let Some(t) = doc.reps.first() {
                let ext = extend_representation(&loc, t)?;
                let base = opts.vertices.clone().unwrap_or_else(|| d.vertex_ids());
                let lv = level_report(&loc, &ext, &base)?;
                verdict &= lv.twists_invertible && lv.dims_constant;
                report.insert("twists_invertible".into(), json!(lv.twists_invertible));
                report.insert("level_dims".into(), json!(lv.level_dims));
                report.insert("dims_constant".into(), json!(lv.dims_constant));
                if let (Some(small), Some(large)) = (&opts.small, &opts.large) {
                    let tr = chi_and_transitions(&gd, t, f0, small, large)?;
                    verdict &= tr.agrees;
                    report.insert("chi".into(), elems(f, &tr.chi));
                    report.insert("transition".into(), emit_matrix(&tr.transition));
                    report.insert("transition_agrees".into(), json!(tr.agrees));
                }
                reps.push(ext);
            }
            let out = DiagramDoc {
                field: f.clone(),
                diagram: loc.graded.diagram.clone(),
                product: Some(loc.graded.product.clone()),
                reps,
            };
            report.insert("diagram".into(), emit_diagram_doc(&out));
            Ok(Outcome::verdict(Value::Object(report), verdict))
        }
        "hom" => {
            let h = hom_space(d, doc.rep(0)?, doc.rep(1)?, &vs)?;
            Ok(Outcome::ok(json!({"dim": h.dim(), "basis": space_basis(&h)})))
        }
        "periods" => {
            let (t1, t2) = (doc.rep(0)?, doc.rep(1).unwrap_or(doc.rep(0)?));
            let p = period_space(d, t1, t2, &vs)?;
            let classes: Vec<Value> = (0..p.dim())
                .map(|k| {
                    Value::Object(p.representative_matrices(k).into_iter().map(|(v, m)| (v, emit_matrix(&m))).collect())
                })
                .collect();
            let co = coactions(d, t1, t2, &vs)?;
            let ok = co.counit && co.coassociative;
            Ok(Outcome::verdict(
                json!({
                    "dim": p.dim(),
                    "generators": p.layout.total,
                    "classes": classes,
                    "left_coaction": emit_matrix(&co.left),
                    "right_coaction": emit_matrix(&co.right),
                    "coaction_counit": co.counit,
                    "coaction_coassociative": co.coassociative,
                }),
                ok,
            ))
        }
        "psi-check" => {
            let (t1, t2) = (doc.rep(0)?, doc.rep(1).unwrap_or(doc.rep(0)?));
            let r = psi(d, t1, t2, &vs)?;
            Ok(Outcome::verdict(
                json!({"dimP": r.dim_periods, "dimHom": r.dim_hom, "bijective": r.bijective}),
                r.bijective,
            ))
        }
        "matrix-torsor" => {
            let (t1, t2) = (doc.rep(0)?, doc.rep(1)?);
            let r = matrix_torsor_check(d, t1, t2, &vs, opts.samples.unwrap_or(100))?;
            let ok = r.ok();
            Ok(Outcome::verdict(
                json!({
                    "dim_hom": r.dim_hom,
                    "sampled": r.sampled,
                    "invertible": r.invertible,
                    "triples": r.triples,
                    "inconclusive": r.inconclusive,
                    "violations": report_json(&r.report),
                    "ok": ok,
                }),
                ok,
            ))
        }
        other => Err(Error::precondition(format!("{other} does not take a diagram document"))),
    }
}

fn torsor_command(input: &Value) -> Result<Outcome> {
    let t = parse_torsor(input)?;
    let r = check_torsor(&t);
    let mut report = json!({"size": t.n, "torsor": r.is_ok(), "violations": report_json(&r)});
    if r.is_ok() && t.n > 0 {
        let (gl, gr) = (gl_group(&t)?, gr_group(&t)?);
        report["left_group_order"] = json!(gl.group.n);
        report["right_group_order"] = json!(gr.group.n);
        report["left_action_ok"] = json!(gl.report.is_ok());
        report["right_action_ok"] = json!(gr.report.is_ok());
        let ok = gl.report.is_ok() && gr.report.is_ok();
        return Ok(Outcome::verdict(report, ok));
    }
    let ok = r.is_ok();
    Ok(Outcome::verdict(report, ok))
}

fn with_field<T>(
    input: &Value,
    q: impl FnOnce(&serde_json::Map<String, Value>) -> Result<T>,
    k: impl FnOnce(&serde_json::Map<String, Value>, crate::linalg::SimpleExtension) -> Result<T>,
) -> Result<T> {
    let obj = check_format(input)?;
    match parse_field(obj.get("field"))? {
        FieldSpec::Rationals => q(obj),
        FieldSpec::Extension(e) => k(obj, e),
    }
}

fn rigidity_command(input: &Value, opts: &Options) -> Result<Outcome> {
    fn go<K: Codec>(obj: &serde_json::Map<String, Value>, f: K, opts: &Options) -> Result<Outcome> {
        let a = parse_matrix(&f, crate::io::member(obj, "form", "")?, "/form", None)?;
        let perfect = perfect_duality_check(&a)?;
        if !perfect {
            return Ok(Outcome::verdict(json!({"perfect": false}), false));
        }
        let eqs = isometry_equations(&a)?;
        let distinct: Vec<_> = distinct_equations(&f, &eqs).into_iter().filter(|p| !p.terms.is_empty()).collect();
        let equations: Vec<Value> = distinct
            .iter()
            .map(|p| Value::Object(p.terms.iter().map(|(m, c)| (monomial_key(p, m), f.emit_elem(c))).collect()))
            .collect();
        let mut rng = opts.rng();
        let samples = sample_isometries(&a, &mut rng, opts.samples.unwrap_or(10))?;
        let mut samples_ok = true;
        for x in &samples {
            samples_ok &= is_isometry(&a, x)? && eqs.iter().all(|p| f.is_zero(&p.evaluate(&f, x)));
        }
        Ok(Outcome::verdict(
            json!({
                "perfect": true,
                "equations": equations,
                "equation_count": eqs.len(),
                "distinct_count": distinct.len(),
                "samples": samples.len(),
                "samples_satisfy_equations": samples_ok,
            }),
            samples_ok,
        ))
    }
    with_field(input, |o| go(o, Q, opts), |o, k| go(o, k, opts))
}

fn monomial_key<K: Codec>(p: &crate::rigidity::Polynomial<K>, m: &crate::rigidity::Monomial) -> String {
    if m.is_empty() {
        "1".to_string()
    } else {
        p.render_monomial(m)
    }
}

fn monoid_command(input: &Value, opts: &Options) -> Result<Outcome> {
    fn go<K: Codec>(obj: &serde_json::Map<String, Value>, f: K, opts: &Options) -> Result<Outcome> {
        let gens: Vec<Matrix<K>> = crate::io::array(crate::io::member(obj, "generators", "")?, "/generators")?
            .iter()
            .enumerate()
            .map(|(i, g)| parse_matrix(&f, g, &format!("/generators/{i}"), None))
            .collect::<Result<_>>()?;
        let cap = opts.cap.or_else(|| obj.get("cap").and_then(Value::as_u64).map(|c| c as usize)).unwrap_or(1024);
        let m = generate_monoid(&gens, cap)?
            .ok_or_else(|| Error::precondition(format!("the generated monoid exceeds {cap} elements")))?;
        let v = monoid_is_group(&m)?;
        Ok(Outcome::verdict(
            json!({
                "size": m.len(),
                "is_group": v.is_group,
                "has_identity": v.has_identity,
                "inverses": v.inverses,
                "orders": v.orders,
            }),
            v.is_group,
        ))
    }
    with_field(input, |o| go(o, Q, opts), |o, k| go(o, k, opts))
}

fn complex_command(command: &str, input: &Value, opts: &Options) -> Result<Outcome> {
    let doc = parse_complex_doc(input)?;
    let direct = cohomology_dims(&doc.x, &doc.y)?;
    match command {
        "cohomology" => {
            let rc = relative_cochains(&doc.x, &doc.y)?;
            let mut report = json!({
                "cochain_dims": rc.complex.dims,
                "cohomology": direct,
                "euler": rc.complex.euler(),
                "is_complex": rc.complex.is_complex(),
            });
            let mut verdict = rc.complex.is_complex();
            if let Some(i) = opts.degree {
                let good = is_good_pair(&doc.x, &doc.y, i)?;
                report["good_pair"] = json!(good);
                verdict &= good;
            }
            Ok(Outcome::verdict(report, verdict))
        }
        "cech" => {
            let cover = doc.cover.as_ref().ok_or_else(|| Error::schema("/cover", "cech needs a cover"))?;
            let c = cech_total_complex(&doc.x, &doc.y, cover)?;
            let mut total = c.betti()?;
            let agree =
                total.iter().skip(direct.len()).all(|&b| b == 0) && total.iter().zip(&direct).all(|(a, b)| a == b);
            total.truncate(direct.len().max(1));
            Ok(Outcome::verdict(
                json!({"cech": total, "direct": direct, "is_complex": c.is_complex(), "agree": agree}),
                agree && c.is_complex(),
            ))
        }
        _ => {
            if !doc.y.is_empty() {
                return Err(Error::schema("/subcomplex", "filtration works on absolute complexes"));
            }
            let filt = skeletal_filtration(&doc.x)?;
            let c = filtration_complex(&filt)?;
            let via = c.betti()?;
            let agree = via == direct;
            Ok(Outcome::verdict(
                json!({"steps": filt.steps.len(), "good": filt.good, "filtration": via, "direct": direct, "agree": agree}),
                agree && c.is_complex(),
            ))
        }
    }
}

fn fixture_command(input: &Value) -> Result<Outcome> {
    let spec = parse_fixture_doc(input)?;
    if let Some(depth) = spec.kunneth_depth {
        if !spec.triples.is_empty() {
            return Err(Error::schema("/triples", "graded word fixtures take no triples"));
        }
        let sign_rule = if spec.proof_sign_rule { SignRule::ProofVariant } else { SignRule::Literal };
        let fx = kunneth_fixture(&spec.pairs, &spec.maps, depth, sign_rule)?;
        let doc = DiagramDoc {
            field: Q,
            diagram: fx.words.graded.diagram.clone(),
            product: Some(fx.words.graded.product.clone()),
            reps: vec![fx.rep],
        };
        return Ok(Outcome::ok(emit_diagram_doc(&doc)));
    }
    let fx = make_diagram_fixture(&spec.pairs, &spec.maps, &spec.triples)?;
    let mut reps = vec![GradedRepresentation { rep: fx.rep.clone(), tau: Default::default() }];
    if let Some(p) = &spec.conjugate {
        reps.push(GradedRepresentation { rep: conjugate(&fx.diagram, &fx.rep, p)?, tau: Default::default() });
    }
    Ok(Outcome::ok(emit_diagram_doc(&DiagramDoc { field: Q, diagram: fx.diagram, product: None, reps })))
}
