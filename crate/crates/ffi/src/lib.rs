//! C ABI over the diagram-periods engine.
//!
//! Documents are loaded from JSON into opaque handles. Every entry point
//! returns a `DpStatus`; on an error the message is available from
//! `dp_last_error` until the next call on the same thread. Strings handed
//! out by the library must be released with `dp_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use diagram_periods::cli::{self, Options};
use diagram_periods::endo::{end_algebra, hom_space};
use diagram_periods::io::{parse_diagram_doc, parse_json, AnyDiagramDoc, DiagramDoc};
use diagram_periods::linalg::Field;
use diagram_periods::periods::psi;
use diagram_periods::Error;

/// Result codes. `DP_FALSE` means the computation ran and the property checked does not hold.
#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DpStatus {
    DP_OK = 0,
    DP_FALSE = 1,
    DP_ERR_ARITHMETIC = 2,
    DP_ERR_DIMENSION = 3,
    DP_ERR_PRECONDITION = 4,
    DP_ERR_CONSISTENCY = 5,
    DP_ERR_SCHEMA = 6,
    DP_ERR_JSON = 7,
    DP_ERR_IO = 8,
    DP_ERR_NULL_POINTER = 9,
    DP_ERR_UTF8 = 10,
    DP_ERR_UNKNOWN_COMMAND = 11,
    DP_ERR_PANIC = 12,
}

use DpStatus::*;

/// A parsed diagram document: a diagram, an optional product structure and its representations.
pub struct DpDocument {
    doc: AnyDiagramDoc,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> DpStatus {
    match e {
        Error::Arithmetic(_) => DP_ERR_ARITHMETIC,
        Error::Dimension(_) => DP_ERR_DIMENSION,
        Error::Precondition(_) => DP_ERR_PRECONDITION,
        Error::Consistency(_) => DP_ERR_CONSISTENCY,
        Error::Schema { .. } => DP_ERR_SCHEMA,
        Error::Json { .. } => DP_ERR_JSON,
        Error::Io(_) => DP_ERR_IO,
    }
}

struct Fault(DpStatus, String);

impl From<Error> for Fault {
    fn from(e: Error) -> Self {
        Fault(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording any error or panic and translating it into a status.
fn guard(f: impl FnOnce() -> Result<DpStatus, Fault>) -> DpStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fault(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            DP_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fault> {
    if p.is_null() {
        return Err(Fault(DP_ERR_NULL_POINTER, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fault(DP_ERR_UTF8, format!("{what}: {e}")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fault> {
    p.as_mut().ok_or_else(|| Fault(DP_ERR_NULL_POINTER, format!("{what} is null")))
}

unsafe fn doc<'a>(p: *const DpDocument) -> Result<&'a AnyDiagramDoc, Fault> {
    p.as_ref().map(|d| &d.doc).ok_or_else(|| Fault(DP_ERR_NULL_POINTER, "document is null".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Version string of the library; static, do not free.
#[no_mangle]
pub extern "C" fn dp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last error on this thread, or null. Valid until the next library call.
#[no_mangle]
pub extern "C" fn dp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn dp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a diagram document. On success `*out` receives a handle to release with `dp_document_free`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_document_from_json(json: *const c_char, out_doc: *mut *mut DpDocument) -> DpStatus {
    guard(|| {
        let slot = out(out_doc, "out")?;
        *slot = ptr::null_mut();
        let v = parse_json(text(json, "json")?)?;
        let doc = parse_diagram_doc(&v)?;
        *slot = Box::into_raw(Box::new(DpDocument { doc }));
        Ok(DP_OK)
    })
}

/// # Safety
/// `doc` must be null or a handle from `dp_document_from_json` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn dp_document_free(doc: *mut DpDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Serializes the document back to JSON; free the result with `dp_string_free`.
///
/// # Safety
/// `doc` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_document_to_json(doc_ptr: *const DpDocument, out_json: *mut *mut c_char) -> DpStatus {
    guard(|| {
        let slot = out(out_json, "out")?;
        let v = match doc(doc_ptr)? {
            AnyDiagramDoc::Rationals(d) => diagram_periods::io::emit_diagram_doc(d),
            AnyDiagramDoc::Extension(d) => diagram_periods::io::emit_diagram_doc(d),
        };
        *slot = into_c_string(v.to_string());
        Ok(DP_OK)
    })
}

/// Number of vertices and of representations in the document.
///
/// # Safety
/// `doc` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dp_document_counts(
    doc_ptr: *const DpDocument,
    vertices: *mut usize,
    representations: *mut usize,
) -> DpStatus {
    guard(|| {
        let (nv, nr) = match doc(doc_ptr)? {
            AnyDiagramDoc::Rationals(d) => (d.diagram.num_vertices(), d.reps.len()),
            AnyDiagramDoc::Extension(d) => (d.diagram.num_vertices(), d.reps.len()),
        };
        *out(vertices, "vertices")? = nv;
        *out(representations, "representations")? = nr;
        Ok(DP_OK)
    })
}

fn end_dim<K: Field>(d: &DiagramDoc<K>, rep: usize) -> Result<usize, Error> {
    let t = d.rep(rep)?;
    Ok(end_algebra(&d.diagram, t, &d.diagram.vertex_ids())?.dim())
}

fn hom_dim<K: Field>(d: &DiagramDoc<K>, a: usize, b: usize) -> Result<usize, Error> {
    Ok(hom_space(&d.diagram, d.rep(a)?, d.rep(b)?, &d.diagram.vertex_ids())?.dim())
}

fn psi_dims<K: Field>(d: &DiagramDoc<K>, a: usize, b: usize) -> Result<(usize, usize, bool), Error> {
    let r = psi(&d.diagram, d.rep(a)?, d.rep(b)?, &d.diagram.vertex_ids())?;
    Ok((r.dim_periods, r.dim_hom, r.bijective))
}

/// Dimension of the endomorphism algebra of representation `rep` over the whole diagram.
///
/// # Safety
/// `doc` must be a live handle and `dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_end_dimension(doc_ptr: *const DpDocument, rep: usize, dim: *mut usize) -> DpStatus {
    guard(|| {
        let n = match doc(doc_ptr)? {
            AnyDiagramDoc::Rationals(d) => end_dim(d, rep)?,
            AnyDiagramDoc::Extension(d) => end_dim(d, rep)?,
        };
        *out(dim, "dim")? = n;
        Ok(DP_OK)
    })
}

/// Dimension of the space of intertwiners from representation `a` to representation `b`.
///
/// # Safety
/// `doc` must be a live handle and `dim` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_hom_dimension(doc_ptr: *const DpDocument, a: usize, b: usize, dim: *mut usize) -> DpStatus {
    guard(|| {
        let n = match doc(doc_ptr)? {
            AnyDiagramDoc::Rationals(d) => hom_dim(d, a, b)?,
            AnyDiagramDoc::Extension(d) => hom_dim(d, a, b)?,
        };
        *out(dim, "dim")? = n;
        Ok(DP_OK)
    })
}

/// Compares the period space of `(a, b)` with the dual of the intertwiner space.
/// Returns `DP_OK` when the comparison map is bijective and `DP_FALSE` otherwise.
///
/// # Safety
/// `doc` must be a live handle; the out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn dp_psi_check(
    doc_ptr: *const DpDocument,
    a: usize,
    b: usize,
    dim_periods: *mut usize,
    dim_hom: *mut usize,
) -> DpStatus {
    guard(|| {
        let (p, h, ok) = match doc(doc_ptr)? {
            AnyDiagramDoc::Rationals(d) => psi_dims(d, a, b)?,
            AnyDiagramDoc::Extension(d) => psi_dims(d, a, b)?,
        };
        *out(dim_periods, "dim_periods")? = p;
        *out(dim_hom, "dim_hom")? = h;
        Ok(if ok { DP_OK } else { DP_FALSE })
    })
}

/// Runs a command-line command on a JSON input. `options_json` may be null or a
/// JSON object with the option names (`vertices`, `small`, `f0`, `samples`, ...).
/// The JSON report is written to `*out_json` (free with `dp_string_free`) for
/// `DP_OK` and `DP_FALSE`; on a fault it holds `{"error": ...}`.
///
/// # Safety
/// `command` and `input_json` must be NUL-terminated strings, `options_json`
/// null or NUL-terminated, and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dp_run(
    command: *const c_char,
    input_json: *const c_char,
    options_json: *const c_char,
    out_json: *mut *mut c_char,
) -> DpStatus {
    guard(|| {
        let slot = out(out_json, "out")?;
        *slot = ptr::null_mut();
        let command = text(command, "command")?;
        if !cli::COMMANDS.contains(&command) {
            return Err(Fault(DP_ERR_UNKNOWN_COMMAND, format!("unknown command {command}")));
        }
        let opts = if options_json.is_null() {
            Options::default()
        } else {
            Options::from_json(&parse_json(text(options_json, "options")?)?)?
        };
        let input = parse_json(text(input_json, "input")?);
        let result = input.and_then(|v| cli::execute(command, &v, &opts));
        match result {
            Ok(o) => {
                *slot = into_c_string(o.report.to_string());
                Ok(if o.exit_code() == cli::EXIT_OK { DP_OK } else { DP_FALSE })
            }
            Err(e) => {
                *slot = into_c_string(serde_json::json!({ "error": e.to_string() }).to_string());
                Err(e.into())
            }
        }
    })
}
