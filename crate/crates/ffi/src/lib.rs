//! C ABI over `commclass`.
//!
//! Permutations and graphs are opaque handles owned by the caller and released
//! with the matching `*_free`. Functions return a [`CcStatus`]; on failure the
//! message is available from [`cc_last_error`] until the next call on the same
//! thread. Strings returned through out-parameters are freed with
//! [`cc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use commclass::{
    a_max, a_min, build_graph, diameter_formula, CommGraph, Error, GraphExport, GraphOptions,
    Permutation,
};

/// Result codes. Non-zero values match the command-line exit statuses.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    Invalid = 2,
    CapExceeded = 3,
    Unrealizable = 4,
    PropertyViolation = 5,
}

pub struct CcPermutation(Permutation);

pub struct CcGraph(CommGraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: Error) -> CcStatus {
    let status = match e.exit_code() {
        3 => CcStatus::CapExceeded,
        4 => CcStatus::Unrealizable,
        5 => CcStatus::PropertyViolation,
        _ => CcStatus::Invalid,
    };
    set_error(e.to_string());
    status
}

fn null(what: &str) -> CcStatus {
    set_error(format!("null pointer: {what}"));
    CcStatus::NullPointer
}

fn clear() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> CcStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            CcStatus::Ok
        }
        Err(_) => fail(Error::OutOfRange("string contains nul".into())),
    }
}

/// Message for the last failure on this thread, or NULL. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn cc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses one-line notation ("25431" or "2,5,4,3,1").
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_perm_parse(text: *const c_char, out: *mut *mut CcPermutation) -> CcStatus {
    clear();
    if text.is_null() {
        return null("text");
    }
    if out.is_null() {
        return null("out");
    }
    let Ok(s) = CStr::from_ptr(text).to_str() else {
        return fail(Error::InvalidPermutation("not UTF-8".into()));
    };
    match s.parse::<Permutation>() {
        Ok(w) => {
            *out = Box::into_raw(Box::new(CcPermutation(w)));
            CcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `p` must come from [`cc_perm_parse`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_perm_free(p: *mut CcPermutation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Size n of the permutation, or 0 for NULL.
///
/// # Safety
/// `p` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_perm_size(p: *const CcPermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.n())
}

/// Coxeter length (number of inversions), or 0 for NULL.
///
/// # Safety
/// `p` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_perm_length(p: *const CcPermutation) -> usize {
    p.as_ref().map_or(0, |p| p.0.length())
}

/// Number of 321-occurrences, which is the diameter of the class graph.
///
/// # Safety
/// `p` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_perm_triple_count(p: *const CcPermutation) -> usize {
    p.as_ref().map_or(0, |p| diameter_formula(&p.0))
}

/// Writes the minimal (`maximal = false`) or maximal extremal reduced word.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_perm_extremal_word(
    p: *const CcPermutation,
    maximal: bool,
    out: *mut *mut c_char,
) -> CcStatus {
    clear();
    let Some(p) = p.as_ref() else { return null("perm") };
    if out.is_null() {
        return null("out");
    }
    let word = if maximal { a_max(&p.0) } else { a_min(&p.0) };
    write_string(out, word.to_string())
}

/// Builds the commutation-class graph. Zero caps select the defaults.
///
/// A graph truncated by a cap is still returned through `out` together with
/// `CC_STATUS_CAP_EXCEEDED`; its metrics are unavailable.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_build(
    p: *const CcPermutation,
    word_cap: usize,
    class_cap: usize,
    out: *mut *mut CcGraph,
) -> CcStatus {
    clear();
    let Some(p) = p.as_ref() else { return null("perm") };
    if out.is_null() {
        return null("out");
    }
    let mut opts = GraphOptions::default();
    if word_cap > 0 {
        opts.word_cap = word_cap;
    }
    if class_cap > 0 {
        opts.class_cap = class_cap;
    }
    let g = build_graph(&p.0, opts);
    let status = match g.status() {
        commclass::GraphStatus::Complete => CcStatus::Ok,
        commclass::GraphStatus::Partial(kind) => fail(Error::PartialGraph(kind)),
    };
    *out = Box::into_raw(Box::new(CcGraph(g)));
    status
}

/// # Safety
/// `g` must come from [`cc_graph_build`] or be NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_free(g: *mut CcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of classes (vertices), or 0 for NULL.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_class_count(g: *const CcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.class_count())
}

/// Number of edges, or 0 for NULL.
///
/// # Safety
/// `g` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_edge_count(g: *const CcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edges().len())
}

unsafe fn metric(g: *const CcGraph, out: *mut usize, pick: fn(&commclass::graph::Metrics) -> usize) -> CcStatus {
    clear();
    let Some(g) = g.as_ref() else { return null("graph") };
    if out.is_null() {
        return null("out");
    }
    match g.0.metrics() {
        Ok(m) => {
            *out = pick(&m);
            CcStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_diameter(g: *const CcGraph, out: *mut usize) -> CcStatus {
    metric(g, out, |m| m.diameter)
}

/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_radius(g: *const CcGraph, out: *mut usize) -> CcStatus {
    metric(g, out, |m| m.radius)
}

/// Writes the graph as pretty-printed JSON.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_to_json(g: *const CcGraph, out: *mut *mut c_char) -> CcStatus {
    clear();
    let Some(g) = g.as_ref() else { return null("graph") };
    if out.is_null() {
        return null("out");
    }
    write_string(out, GraphExport::from_graph(&g.0).to_json_pretty())
}
