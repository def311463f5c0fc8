use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str], stdin: Option<&str>) -> (i32, Value, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_diagram-periods"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    let out = child.wait_with_output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let body = if stdout.trim().is_empty() { &stderr } else { &stdout };
    let v = serde_json::from_str(body).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, stderr)
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn psi_check_on_a_point() {
    let (code, v, _) = run(&["psi-check", &path("point.json")], None);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!({"dimP": 1, "dimHom": 1, "bijective": true}));
}

#[test]
fn torsor_verdicts_map_to_exit_codes() {
    assert_eq!(run(&["torsor-check", &path("z3_torsor.json")], None).0, 0);
    let (code, v, _) = run(&["torsor-check", &path("z3_sum.json")], None);
    assert_eq!(code, 1);
    assert_eq!(v["torsor"], Value::Bool(false));
}

#[test]
fn faults_exit_with_two() {
    let (code, v, _) = run(&["monoid-group", &path("nilpotent_monoid.json")], None);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());
    assert_eq!(run(&["psi-check", "/nonexistent/file.json"], None).0, 2);
    assert_eq!(run(&["psi-check", "-"], Some("{ not json")).0, 2);
}

#[test]
fn decimal_entries_are_rejected() {
    let doc = r#"{"format": "diagram-periods/1", "field": "Q",
        "vertices": [{"id": "v", "grade": 0}], "edges": [{"id": "s", "src": "v", "dst": "v"}],
        "representations": [{"dims": {"v": 1}, "mats": {"s": [["0.5"]]}}]}"#;
    let (code, v, _) = run(&["endo", "-"], Some(doc));
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("/representations/0/mats/s"), "{v}");
    let ok = doc.replace("\"0.5\"", "\"1/2\"");
    let (code, v, _) = run(&["endo", "-"], Some(&ok));
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["dim"], 1);
}

#[test]
fn generated_fixture_round_trips() {
    let (code, doc, _) = run(&["fixture", &path("odd_words.json")], None);
    assert_eq!(code, 0);
    let text = doc.to_string();
    let (code, v, _) = run(&["validate", "-"], Some(&text));
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["valid"], Value::Bool(true));
    let parsed = diagram_periods::io::parse_diagram_doc(&doc).unwrap();
    let again = match &parsed {
        diagram_periods::io::AnyDiagramDoc::Rationals(d) => diagram_periods::io::emit_diagram_doc(d),
        diagram_periods::io::AnyDiagramDoc::Extension(d) => diagram_periods::io::emit_diagram_doc(d),
    };
    assert_eq!(diagram_periods::io::parse_diagram_doc(&again).unwrap(), parsed);
}

#[test]
fn cech_on_the_circle() {
    let (code, v, _) = run(&["cech", &path("circle.json")], None);
    assert_eq!(code, 0);
    assert_eq!((&v["cech"][0], &v["cech"][1]), (&Value::from(1), &Value::from(1)));
    assert_eq!(v["agree"], Value::Bool(true));
}

#[test]
fn extension_field_fixture() {
    let (code, v, _) = run(&["psi-check", &path("sqrt2_torsor.json")], None);
    assert_eq!(code, 0);
    assert_eq!(v["bijective"], Value::Bool(true));
    let (code, v, _) = run(&["matrix-torsor", &path("sqrt2_torsor.json"), "--samples", "20"], None);
    assert_eq!(code, 0, "{v}");
}

#[test]
fn vertex_option_restricts_the_subdiagram() {
    let (code, v, _) = run(&["hom", &path("jordan_loop.json"), "--vertices", "v"], None);
    assert_eq!(code, 0, "{v}");
    assert!(v["dim"].as_u64().unwrap() >= 2);
}

#[test]
fn unknown_command_is_a_usage_error() {
    let (code, _, _) = run(&["frobnicate", &path("point.json")], None);
    assert_ne!(code, 0);
}
