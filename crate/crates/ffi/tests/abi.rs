use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use diagram_periods_ffi::*;

fn fixture(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    CString::new(std::fs::read_to_string(p).unwrap()).unwrap()
}

fn last_error() -> String {
    let p = dp_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn load(name: &str) -> *mut DpDocument {
    let mut doc = ptr::null_mut();
    let json = fixture(name);
    assert_eq!(unsafe { dp_document_from_json(json.as_ptr(), &mut doc) }, DpStatus::DP_OK);
    assert!(!doc.is_null());
    doc
}

#[test]
fn dimensions_through_a_handle() {
    let doc = load("jordan_loop.json");
    let (mut nv, mut nr, mut end, mut hom, mut p) = (0, 0, 0, 0, 0);
    unsafe {
        assert_eq!(dp_document_counts(doc, &mut nv, &mut nr), DpStatus::DP_OK);
        assert_eq!((nv, nr), (2, 2));
        assert_eq!(dp_end_dimension(doc, 0, &mut end), DpStatus::DP_OK);
        assert_eq!(dp_hom_dimension(doc, 0, 1, &mut hom), DpStatus::DP_OK);
        assert_eq!(end, hom);
        assert_eq!(dp_psi_check(doc, 0, 1, &mut p, &mut hom), DpStatus::DP_OK);
        assert_eq!(p, hom);
        dp_document_free(doc);
    }
    assert!(dp_last_error().is_null());
}

#[test]
fn extension_field_documents() {
    let doc = load("sqrt2_torsor.json");
    let (mut p, mut h) = (0, 0);
    unsafe {
        assert_eq!(dp_psi_check(doc, 0, 1, &mut p, &mut h), DpStatus::DP_OK);
        assert_eq!((p, h), (2, 2));
        let mut json = ptr::null_mut();
        assert_eq!(dp_document_to_json(doc, &mut json), DpStatus::DP_OK);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        dp_string_free(json);
        dp_document_free(doc);
        let again = CString::new(text).unwrap();
        let mut doc2 = ptr::null_mut();
        assert_eq!(dp_document_from_json(again.as_ptr(), &mut doc2), DpStatus::DP_OK);
        dp_document_free(doc2);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut doc = ptr::null_mut();
    let bad = CString::new("{\"format\": \"diagram-periods/1\", \"vertices\": 3}").unwrap();
    unsafe {
        assert_eq!(dp_document_from_json(bad.as_ptr(), &mut doc), DpStatus::DP_ERR_SCHEMA);
        assert!(doc.is_null());
        assert!(last_error().contains("/vertices"));
        let broken = CString::new("{ nope").unwrap();
        assert_eq!(dp_document_from_json(broken.as_ptr(), &mut doc), DpStatus::DP_ERR_JSON);
        assert_eq!(dp_document_from_json(ptr::null(), &mut doc), DpStatus::DP_ERR_NULL_POINTER);
        let mut n = 0;
        assert_eq!(dp_end_dimension(ptr::null(), 0, &mut n), DpStatus::DP_ERR_NULL_POINTER);
        let d = load("point.json");
        assert_eq!(dp_end_dimension(d, 5, &mut n), DpStatus::DP_ERR_SCHEMA);
        dp_document_free(d);
    }
}

#[test]
fn run_mirrors_the_command_line() {
    let cmd = CString::new("torsor-check").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(dp_run(cmd.as_ptr(), fixture("z3_torsor.json").as_ptr(), ptr::null(), &mut out), DpStatus::DP_OK);
        dp_string_free(out);
        assert_eq!(dp_run(cmd.as_ptr(), fixture("z3_sum.json").as_ptr(), ptr::null(), &mut out), DpStatus::DP_FALSE);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(v["torsor"], serde_json::Value::Bool(false));
        dp_string_free(out);

        let hom = CString::new("hom").unwrap();
        let opts = CString::new(r#"{"vertices": ["v"]}"#).unwrap();
        assert_eq!(
            dp_run(hom.as_ptr(), fixture("jordan_loop.json").as_ptr(), opts.as_ptr(), &mut out),
            DpStatus::DP_OK
        );
        dp_string_free(out);
        let typo = CString::new(r#"{"vertexes": ["v"]}"#).unwrap();
        assert_eq!(
            dp_run(hom.as_ptr(), fixture("jordan_loop.json").as_ptr(), typo.as_ptr(), &mut out),
            DpStatus::DP_ERR_SCHEMA
        );

        let monoid = CString::new("monoid-group").unwrap();
        let status = dp_run(monoid.as_ptr(), fixture("nilpotent_monoid.json").as_ptr(), ptr::null(), &mut out);
        assert_eq!(status, DpStatus::DP_ERR_PRECONDITION);
        assert!(CStr::from_ptr(out).to_str().unwrap().contains("error"));
        dp_string_free(out);

        let unknown = CString::new("frobnicate").unwrap();
        assert_eq!(
            dp_run(unknown.as_ptr(), fixture("point.json").as_ptr(), ptr::null(), &mut out),
            DpStatus::DP_ERR_UNKNOWN_COMMAND
        );
        assert!(out.is_null());
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(dp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles the bundled C example against the generated header and the static
/// library, then runs it on a fixture. Skipped when no C compiler is present.
#[test]
fn c_example_links_against_the_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let Some(cc) =
        ["cc", "gcc", "clang"].into_iter().find(|c| std::process::Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    // the test binary lives in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libdiagram_periods_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipping", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("dp_smoke_{}", std::process::id()));
    let status = std::process::Command::new(cc)
        .arg(manifest.join("examples/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = std::process::Command::new(&out).arg(manifest.join("../../fixtures/jordan_loop.json")).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.contains("bijective 1"), "{text}");
    assert!(text.contains("\"valid\":true"), "{text}");
}
