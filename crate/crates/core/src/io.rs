//! The JSON document format.
//!
//! Every document carries `"format": "diagram-periods/1"`. Scalars are exact
//! fraction strings `"p/q"` (integers may also be plain JSON integers);
//! decimal literals are rejected. Extension elements are coefficient arrays,
//! lowest degree first. Schema errors name the offending JSON pointer.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::diagram::{Diagram, GradedDiagram, GradedRepresentation, ProductStructure, Representation};
use crate::error::{Error, Result};
use crate::linalg::field::format_rational;
use crate::linalg::{Field, Matrix, Rational, Rationals, SimpleExtension};
use crate::simplicial::{Complex, MapSpec, PairSpec, TripleSpec};
use crate::torsor::FiniteTorsor;

pub const FORMAT: &str = "diagram-periods/1";

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json { line: e.line(), column: e.column(), message: e.to_string() })
}

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

fn at(path: &str, key: &str) -> String {
    format!("{path}/{}", escape(key))
}

fn at_index(path: &str, i: usize) -> String {
    format!("{path}/{i}")
}

pub(crate) fn object<'v>(v: &'v Value, path: &str) -> Result<&'v Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

pub(crate) fn array<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

pub(crate) fn string<'v>(v: &'v Value, path: &str) -> Result<&'v str> {
    v.as_str().ok_or_else(|| Error::schema(path, "expected a string"))
}

pub(crate) fn count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| Error::schema(path, "expected a nonnegative integer"))
}

pub(crate) fn member<'v>(obj: &'v Map<String, Value>, key: &str, path: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| Error::schema(at(path, key), "missing member"))
}

/// Checks the `format` member of a top-level document.
pub fn check_format(v: &Value) -> Result<&Map<String, Value>> {
    let obj = object(v, "")?;
    match obj.get("format").and_then(Value::as_str) {
        Some(FORMAT) => Ok(obj),
        Some(other) => Err(Error::schema("/format", format!("unsupported format {other:?}, expected {FORMAT:?}"))),
        None => Err(Error::schema("/format", format!("missing format tag {FORMAT:?}"))),
    }
}

pub fn parse_rational(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(i), _) => Ok(Rational::from_integer(BigInt::from(i))),
            (_, Some(u)) => Ok(Rational::from_integer(BigInt::from(u))),
            _ => Err(Error::schema(path, format!("decimal literal {n} is not allowed; write a fraction string"))),
        },
        Value::String(s) => {
            parse_fraction(s).ok_or_else(|| Error::schema(path, format!("{s:?} is not a fraction p/q")))
        }
        _ => Err(Error::schema(path, "expected a fraction string or an integer")),
    }
}

fn parse_fraction(s: &str) -> Option<Rational> {
    let integer = |t: &str| -> Option<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        t.parse().ok()
    };
    let s = s.trim();
    match s.split_once('/') {
        None => integer(s).map(Rational::from_integer),
        Some((p, q)) => {
            let (p, q) = (integer(p)?, integer(q)?);
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
    }
}

/// Serialization of field elements.
pub trait Codec: Field {
    fn parse_elem(&self, v: &Value, path: &str) -> Result<Self::Elem>;
    fn emit_elem(&self, e: &Self::Elem) -> Value;
    fn descriptor(&self) -> Value;
}

impl Codec for Rationals {
    fn parse_elem(&self, v: &Value, path: &str) -> Result<Rational> {
        parse_rational(v, path)
    }

    fn emit_elem(&self, e: &Rational) -> Value {
        Value::String(format_rational(e))
    }

    fn descriptor(&self) -> Value {
        json!("Q")
    }
}

impl Codec for SimpleExtension {
    /// A coefficient array, or a bare rational for an element of the base field.
    fn parse_elem(&self, v: &Value, path: &str) -> Result<crate::linalg::ExtElem> {
        match v {
            Value::Array(cs) => {
                let coeffs = cs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| parse_rational(c, &at_index(path, i)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.element(&coeffs))
            }
            _ => Ok(self.from_rational(&parse_rational(v, path)?)),
        }
    }

    fn emit_elem(&self, e: &crate::linalg::ExtElem) -> Value {
        Value::Array(e.0.iter().map(|c| Value::String(format_rational(c))).collect())
    }

    fn descriptor(&self) -> Value {
        json!({ "minpoly": self.modulus().iter().map(format_rational).collect::<Vec<_>>() })
    }
}

/// The scalar field named by a document: `"Q"`, `"Q(i)"`, `"Q(sqrt2)"` or `{"minpoly": [...]}`.
#[derive(Clone, Debug, PartialEq)]
pub enum FieldSpec {
    Rationals,
    Extension(SimpleExtension),
}

pub fn parse_field(v: Option<&Value>) -> Result<FieldSpec> {
    let path = "/field";
    match v {
        None => Ok(FieldSpec::Rationals),
        Some(Value::String(s)) => match s.as_str() {
            "Q" => Ok(FieldSpec::Rationals),
            "Q(i)" => Ok(FieldSpec::Extension(SimpleExtension::gaussian())),
            "Q(sqrt2)" => Ok(FieldSpec::Extension(SimpleExtension::sqrt2())),
            other => Err(Error::schema(path, format!("unknown field {other:?}"))),
        },
        Some(v) => {
            let obj = object(v, path)?;
            let mp = array(member(obj, "minpoly", path)?, &at(path, "minpoly"))?;
            let coeffs = mp
                .iter()
                .enumerate()
                .map(|(i, c)| parse_rational(c, &at_index(&at(path, "minpoly"), i)))
                .collect::<Result<Vec<_>>>()?;
            let k = SimpleExtension::new(coeffs).map_err(|e| Error::schema(at(path, "minpoly"), e.to_string()))?;
            Ok(FieldSpec::Extension(k))
        }
    }
}

/// A row-major nested array. `shape` is required to type an empty matrix and checked otherwise.
pub fn parse_matrix<K: Codec>(field: &K, v: &Value, path: &str, shape: Option<(usize, usize)>) -> Result<Matrix<K>> {
    let rows = array(v, path)?;
    let mut data = Vec::new();
    let mut cols = None;
    for (i, r) in rows.iter().enumerate() {
        let rp = at_index(path, i);
        let r = array(r, &rp)?;
        match cols {
            None => cols = Some(r.len()),
            Some(c) if c != r.len() => {
                return Err(Error::schema(rp, format!("row has {} entries, expected {c}", r.len())))
            }
            _ => {}
        }
        for (j, x) in r.iter().enumerate() {
            data.push(field.parse_elem(x, &at_index(&rp, j))?);
        }
    }
    let got = (rows.len(), cols.unwrap_or(shape.map_or(0, |s| s.1)));
    if let Some(want) = shape {
        if got != want && !(got.0 == 0 && want.0 == 0) {
            return Err(Error::schema(
                path,
                format!("matrix has shape {}x{}, expected {}x{}", got.0, got.1, want.0, want.1),
            ));
        }
        if got.0 == 0 {
            return Ok(Matrix::zeros(field.clone(), want.0, want.1));
        }
    }
    Matrix::new(field.clone(), got.0, got.1, data)
}

pub fn emit_matrix<K: Codec>(m: &Matrix<K>) -> Value {
    let f = m.field();
    Value::Array(
        (0..m.rows()).map(|i| Value::Array((0..m.cols()).map(|j| f.emit_elem(m.get(i, j))).collect())).collect(),
    )
}

/// A parsed diagram document.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagramDoc<K: Field> {
    pub field: K,
    pub diagram: Diagram,
    pub product: Option<ProductStructure>,
    pub reps: Vec<GradedRepresentation<K>>,
}

impl<K: Field> DiagramDoc<K> {
    pub fn rep(&self, i: usize) -> Result<&Representation<K>> {
        self.reps.get(i).map(|g| &g.rep).ok_or_else(|| {
            Error::schema(
                "/representations",
                format!("the command needs {} representation(s), found {}", i + 1, self.reps.len()),
            )
        })
    }

    pub fn graded(&self, i: usize) -> Result<(GradedDiagram, &GradedRepresentation<K>)> {
        let product =
            self.product.clone().ok_or_else(|| Error::schema("/product", "the command needs a product structure"))?;
        self.rep(i)?;
        Ok((GradedDiagram { diagram: self.diagram.clone(), product }, &self.reps[i]))
    }
}

/// A diagram document over whichever field it names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyDiagramDoc {
    Rationals(DiagramDoc<Rationals>),
    Extension(DiagramDoc<SimpleExtension>),
}

pub fn parse_diagram_doc(v: &Value) -> Result<AnyDiagramDoc> {
    let obj = check_format(v)?;
    Ok(match parse_field(obj.get("field"))? {
        FieldSpec::Rationals => AnyDiagramDoc::Rationals(parse_diagram_with(obj, crate::linalg::Q)?),
        FieldSpec::Extension(k) => AnyDiagramDoc::Extension(parse_diagram_with(obj, k)?),
    })
}

fn split_key(key: &str, n: usize, path: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = key.split(',').map(str::to_string).collect();
    if parts.len() != n {
        return Err(Error::schema(path, format!("key {key:?} should list {n} comma-separated ids")));
    }
    Ok(parts)
}

fn string_table(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Vec<(String, String, String)>> {
    let Some(v) = obj.get(key) else { return Ok(Vec::new()) };
    let p = at(path, key);
    object(v, &p)?.iter().map(|(k, v)| Ok((k.clone(), string(v, &at(&p, k))?.to_string(), at(&p, k)))).collect()
}

fn parse_product(v: &Value, path: &str) -> Result<ProductStructure> {
    let obj = object(v, path)?;
    let mut p = ProductStructure {
        unit: string(member(obj, "unit", path)?, &at(path, "unit"))?.to_string(),
        ..Default::default()
    };
    let pair = |k: &str, path: &str| -> Result<(String, String)> {
        let s = split_key(k, 2, path)?;
        Ok((s[0].clone(), s[1].clone()))
    };
    for (k, val, kp) in string_table(obj, "table", path)? {
        p.product.insert(pair(&k, &kp)?, val);
    }
    for (k, val, kp) in string_table(obj, "alpha", path)? {
        p.alpha.insert(pair(&k, &kp)?, val);
    }
    for (k, val, kp) in string_table(obj, "beta", path)? {
        let s = split_key(&k, 3, &kp)?;
        p.beta.insert((s[0].clone(), s[1].clone(), s[2].clone()), val);
    }
    for (k, val, _) in string_table(obj, "unit_edges", path)? {
        p.unit_edges.insert(k, val);
    }
    for (k, val, kp) in string_table(obj, "left", path)? {
        p.left.insert(pair(&k, &kp)?, val);
    }
    for (k, val, kp) in string_table(obj, "right", path)? {
        p.right.insert(pair(&k, &kp)?, val);
    }
    Ok(p)
}

fn parse_diagram_with<K: Codec>(obj: &Map<String, Value>, field: K) -> Result<DiagramDoc<K>> {
    let mut d = Diagram::new();
    let vs = array(member(obj, "vertices", "")?, "/vertices")?;
    for (i, v) in vs.iter().enumerate() {
        let p = at_index("/vertices", i);
        let o = object(v, &p)?;
        let id = string(member(o, "id", &p)?, &at(&p, "id"))?;
        let grade = match o.get("grade") {
            None => false,
            Some(g) => match count(g, &at(&p, "grade"))? {
                0 => false,
                1 => true,
                _ => return Err(Error::schema(at(&p, "grade"), "grade is 0 or 1")),
            },
        };
        d.add_bare_vertex(id, grade).map_err(|e| Error::schema(&p, e.to_string()))?;
    }
    let empty = Vec::new();
    let es = match obj.get("edges") {
        Some(e) => array(e, "/edges")?,
        None => &empty,
    };
    for (i, e) in es.iter().enumerate() {
        let p = at_index("/edges", i);
        let o = object(e, &p)?;
        let id = string(member(o, "id", &p)?, &at(&p, "id"))?;
        let src = string(member(o, "src", &p)?, &at(&p, "src"))?;
        let dst = string(member(o, "dst", &p)?, &at(&p, "dst"))?;
        let identity = o.get("identity").and_then(Value::as_bool).unwrap_or(false);
        let r = if identity {
            if src != dst {
                return Err(Error::schema(&p, "an identity edge must be a loop"));
            }
            d.add_identity_edge(id, src)
        } else {
            d.add_edge(id, src, dst)
        };
        r.map_err(|e| Error::schema(&p, e.to_string()))?;
    }
    for v in d.vertex_ids() {
        if d.identity_edge(&v).is_none() {
            d.add_identity_edge(&crate::diagram::identity_edge_id(&v), &v)
                .map_err(|e| Error::schema("/edges", e.to_string()))?;
        }
    }
    let product = obj.get("product").map(|v| parse_product(v, "/product")).transpose()?;
    let mut reps = Vec::new();
    if let Some(rs) = obj.get("representations") {
        for (i, r) in array(rs, "/representations")?.iter().enumerate() {
            reps.push(parse_rep(&field, &d, r, &at_index("/representations", i))?);
        }
    }
    Ok(DiagramDoc { field, diagram: d, product, reps })
}

fn parse_rep<K: Codec>(field: &K, d: &Diagram, v: &Value, path: &str) -> Result<GradedRepresentation<K>> {
    let obj = object(v, path)?;
    let mut rep = Representation::new(field.clone());
    let dp = at(path, "dims");
    let dims = object(member(obj, "dims", path)?, &dp)?;
    for (k, n) in dims {
        if !d.has_vertex(k) {
            return Err(Error::schema(at(&dp, k), format!("unknown vertex {k}")));
        }
        rep.dims.insert(k.clone(), count(n, &at(&dp, k))?);
    }
    if let Some(v) = d.vertex_ids().into_iter().find(|v| !rep.dims.contains_key(v)) {
        return Err(Error::schema(dp, format!("no dimension for vertex {v}")));
    }
    let mp = at(path, "mats");
    let empty = Map::new();
    let mats = match obj.get("mats") {
        Some(m) => object(m, &mp)?,
        None => &empty,
    };
    for (k, m) in mats {
        let e = d.edge(k).ok_or_else(|| Error::schema(at(&mp, k), format!("unknown edge {k}")))?;
        let shape = (rep.dim(&e.dst), rep.dim(&e.src));
        rep.mats.insert(k.clone(), parse_matrix(field, m, &at(&mp, k), Some(shape))?);
    }
    if let Some((e, _)) = d.proper_edges().find(|(e, _)| !rep.mats.contains_key(*e)) {
        return Err(Error::schema(mp, format!("no matrix for edge {e}")));
    }
    rep.fill_identities(d);
    let mut tau = BTreeMap::new();
    if let Some(t) = obj.get("tau") {
        let tp = at(path, "tau");
        for (k, m) in object(t, &tp)? {
            let kp = at(&tp, k);
            let s = split_key(k, 2, &kp)?;
            tau.insert((s[0].clone(), s[1].clone()), parse_matrix(field, m, &kp, None)?);
        }
    }
    Ok(GradedRepresentation { rep, tau })
}

pub fn emit_product(p: &ProductStructure) -> Value {
    let pairs = |m: &BTreeMap<(String, String), String>| -> Map<String, Value> {
        m.iter().map(|((a, b), v)| (format!("{a},{b}"), json!(v))).collect()
    };
    json!({
        "unit": p.unit,
        "table": pairs(&p.product),
        "alpha": pairs(&p.alpha),
        "beta": p.beta.iter().map(|((a, b, c), v)| (format!("{a},{b},{c}"), json!(v))).collect::<Map<_, _>>(),
        "unit_edges": p.unit_edges,
        "left": pairs(&p.left),
        "right": pairs(&p.right),
    })
}

pub fn emit_rep<K: Codec>(t: &GradedRepresentation<K>) -> Value {
    let mut o = Map::new();
    o.insert("dims".into(), json!(t.rep.dims));
    o.insert("mats".into(), Value::Object(t.rep.mats.iter().map(|(k, m)| (k.clone(), emit_matrix(m))).collect()));
    if !t.tau.is_empty() {
        o.insert(
            "tau".into(),
            Value::Object(t.tau.iter().map(|((a, b), m)| (format!("{a},{b}"), emit_matrix(m))).collect()),
        );
    }
    Value::Object(o)
}

pub fn emit_diagram_doc<K: Codec>(doc: &DiagramDoc<K>) -> Value {
    let d = &doc.diagram;
    let mut o = Map::new();
    o.insert("format".into(), json!(FORMAT));
    o.insert("field".into(), doc.field.descriptor());
    o.insert("vertices".into(), d.vertices().map(|(id, g)| json!({"id": id, "grade": u8::from(g)})).collect());
    o.insert(
        "edges".into(),
        d.edges()
            .map(|(id, e)| {
                let mut x = json!({"id": id, "src": e.src, "dst": e.dst});
                if e.identity {
                    x["identity"] = json!(true);
                }
                x
            })
            .collect(),
    );
    if let Some(p) = &doc.product {
        o.insert("product".into(), emit_product(p));
    }
    o.insert("representations".into(), doc.reps.iter().map(emit_rep).collect());
    Value::Object(o)
}

pub fn parse_torsor(v: &Value) -> Result<FiniteTorsor> {
    let obj = check_format(v)?;
    let t = array(member(obj, "table", "")?, "/table")?;
    let n = t.len();
    let mut table = Vec::with_capacity(n * n * n);
    for (x, plane) in t.iter().enumerate() {
        let px = at_index("/table", x);
        let plane = array(plane, &px)?;
        if plane.len() != n {
            return Err(Error::schema(px, format!("expected {n} rows")));
        }
        for (y, row) in plane.iter().enumerate() {
            let py = at_index(&px, y);
            let row = array(row, &py)?;
            if row.len() != n {
                return Err(Error::schema(py, format!("expected {n} entries")));
            }
            for (z, e) in row.iter().enumerate() {
                table.push(count(e, &at_index(&py, z))?);
            }
        }
    }
    Ok(FiniteTorsor { n, table })
}

pub fn emit_torsor(t: &FiniteTorsor) -> Value {
    let n = t.n;
    let table: Vec<Vec<Vec<usize>>> =
        (0..n).map(|x| (0..n).map(|y| (0..n).map(|z| t.t(x, y, z)).collect()).collect()).collect();
    json!({"format": FORMAT, "table": table})
}

/// A complex as a list of maximal simplices.
pub fn parse_complex(v: &Value, path: &str) -> Result<Complex> {
    let simplices = array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p = at_index(path, i);
            array(s, &p)?.iter().enumerate().map(|(j, x)| count(x, &at_index(&p, j))).collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, s) in simplices.iter().enumerate() {
        let mut t = s.clone();
        t.sort_unstable();
        t.dedup();
        if t.len() != s.len() || s.is_empty() {
            return Err(Error::schema(at_index(path, i), "a simplex is a nonempty list of distinct vertices"));
        }
    }
    Complex::from_maximal(&simplices).map_err(|e| Error::schema(path, e.to_string()))
}

pub fn emit_complex(c: &Complex) -> Value {
    json!(c.maximal())
}

/// A pair document: `complex`, optional `subcomplex` (default empty), optional `cover`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexDoc {
    pub x: Complex,
    pub y: Complex,
    pub cover: Option<Vec<Complex>>,
}

pub fn parse_complex_doc(v: &Value) -> Result<ComplexDoc> {
    let obj = check_format(v)?;
    let x = parse_complex(member(obj, "complex", "")?, "/complex")?;
    let y = obj.get("subcomplex").map(|s| parse_complex(s, "/subcomplex")).transpose()?.unwrap_or_else(Complex::empty);
    if !y.is_subcomplex_of(&x) {
        return Err(Error::schema("/subcomplex", "not a subcomplex of /complex"));
    }
    let cover = obj
        .get("cover")
        .map(|c| {
            array(c, "/cover")?
                .iter()
                .enumerate()
                .map(|(i, u)| parse_complex(u, &at_index("/cover", i)))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    Ok(ComplexDoc { x, y, cover })
}

/// Specification of a simplicial fixture.
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureDoc {
    pub pairs: Vec<PairSpec>,
    pub maps: Vec<MapSpec>,
    pub triples: Vec<TripleSpec>,
    /// Per-vertex matrices conjugating a second representation.
    pub conjugate: Option<BTreeMap<String, Matrix<Rationals>>>,
    /// Build the graded word fixture of this depth instead.
    pub kunneth_depth: Option<usize>,
    pub proof_sign_rule: bool,
}

pub fn parse_fixture_doc(v: &Value) -> Result<FixtureDoc> {
    let obj = check_format(v)?;
    let name = |o: &Map<String, Value>, p: &str| -> Result<String> {
        Ok(string(member(o, "name", p)?, &at(p, "name"))?.to_string())
    };
    let mut pairs = Vec::new();
    for (i, x) in array(member(obj, "pairs", "")?, "/pairs")?.iter().enumerate() {
        let p = at_index("/pairs", i);
        let o = object(x, &p)?;
        let cx = parse_complex(member(o, "complex", &p)?, &at(&p, "complex"))?;
        let cy = o
            .get("subcomplex")
            .map(|s| parse_complex(s, &at(&p, "subcomplex")))
            .transpose()?
            .unwrap_or_else(Complex::empty);
        let degree = count(member(o, "degree", &p)?, &at(&p, "degree"))?;
        pairs.push(PairSpec { name: name(o, &p)?, x: cx, y: cy, degree });
    }
    let mut maps = Vec::new();
    if let Some(ms) = obj.get("maps") {
        for (i, x) in array(ms, "/maps")?.iter().enumerate() {
            let p = at_index("/maps", i);
            let o = object(x, &p)?;
            let vp = at(&p, "vertex_map");
            let mut vertex_map = BTreeMap::new();
            for (k, t) in object(member(o, "vertex_map", &p)?, &vp)? {
                let s: usize = k.parse().map_err(|_| Error::schema(at(&vp, k), "keys are vertex indices"))?;
                vertex_map.insert(s, count(t, &at(&vp, k))?);
            }
            let domain = string(member(o, "domain", &p)?, &at(&p, "domain"))?.to_string();
            let codomain = string(member(o, "codomain", &p)?, &at(&p, "codomain"))?.to_string();
            maps.push(MapSpec { name: name(o, &p)?, domain, codomain, vertex_map });
        }
    }
    let mut triples = Vec::new();
    if let Some(ts) = obj.get("triples") {
        for (i, x) in array(ts, "/triples")?.iter().enumerate() {
            let p = at_index("/triples", i);
            let o = object(x, &p)?;
            let lower = string(member(o, "lower", &p)?, &at(&p, "lower"))?.to_string();
            let upper = string(member(o, "upper", &p)?, &at(&p, "upper"))?.to_string();
            triples.push(TripleSpec { name: name(o, &p)?, lower, upper });
        }
    }
    let conjugate = obj
        .get("conjugate")
        .map(|c| {
            object(c, "/conjugate")?
                .iter()
                .map(|(k, m)| Ok((k.clone(), parse_matrix(&crate::linalg::Q, m, &at("/conjugate", k), None)?)))
                .collect::<Result<BTreeMap<_, _>>>()
        })
        .transpose()?;
    let (mut kunneth_depth, mut proof_sign_rule) = (None, false);
    if let Some(k) = obj.get("kunneth") {
        let o = object(k, "/kunneth")?;
        kunneth_depth = Some(count(member(o, "depth", "/kunneth")?, "/kunneth/depth")?);
        proof_sign_rule = match o.get("sign_rule").map(|s| string(s, "/kunneth/sign_rule")).transpose()? {
            None | Some("literal") => false,
            Some("proof") => true,
            Some(other) => return Err(Error::schema("/kunneth/sign_rule", format!("unknown sign rule {other:?}"))),
        };
    }
    Ok(FixtureDoc { pairs, maps, triples, conjugate, kunneth_depth, proof_sign_rule })
}
