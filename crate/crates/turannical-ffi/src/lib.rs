//! C ABI for the turannical library.
//!
//! Conventions:
//! - Graphs and hypergraphs are opaque handles created from JSON and freed
//!   with their `_free` function.
//! - Every fallible call returns a [`TrnStatus`]; results go to out
//!   pointers, which are written only on `TRN_STATUS_OK`.
//! - [`trn_last_error_message`] returns a thread-local description of the
//!   most recent failure; the pointer is valid until the next failing call
//!   on the same thread.
//! - Strings returned by the library are freed with [`trn_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use turannical::detect;
use turannical::error::Error;
use turannical::graph::Graph;
use turannical::hypergraph::UniformHypergraph;
use turannical::io;
use turannical::solver::{self, SearchBudget, Verdict};
use turannical::turan;

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrnStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ParseError = 3,
    Overflow = 4,
    Utf8Error = 5,
    Panic = 6,
}

/// Tri-state decision outcome.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrnVerdict {
    Holds = 0,
    Fails = 1,
    Unknown = 2,
}

/// Opaque graph handle.
pub struct TrnGraph(Graph);

/// Opaque hypergraph handle.
pub struct TrnHypergraph(UniformHypergraph);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

fn status_of(err: &Error) -> TrnStatus {
    match err {
        Error::Parameter(_) => TrnStatus::InvalidArgument,
        Error::Overflow(_) => TrnStatus::Overflow,
        Error::Json { .. } | Error::Csv { .. } => TrnStatus::ParseError,
        Error::UndefinedRatio => TrnStatus::InvalidArgument,
        Error::Io(_) => TrnStatus::InvalidArgument,
    }
}

/// Runs a closure, translating errors and panics into status codes.
fn guarded<F: FnOnce() -> Result<TrnStatus, Error>>(f: F) -> TrnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(err)) => {
            set_error(&err.to_string());
            status_of(&err)
        }
        Err(_) => {
            set_error("internal panic");
            TrnStatus::Panic
        }
    }
}

unsafe fn cstr_input<'a>(ptr: *const c_char) -> Result<&'a str, TrnStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(TrnStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| {
        set_error(&format!("invalid UTF-8: {e}"));
        TrnStatus::Utf8Error
    })
}

/// Message describing the most recent failure on this thread. Never null;
/// empty before any failure.
#[no_mangle]
pub extern "C" fn trn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Frees a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by a `trn_*` function and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a graph from JSON `{"n": int, "edges": [[u,v],...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer. On success `*out` owns a graph to be freed with
/// [`trn_graph_free`].
#[no_mangle]
pub unsafe extern "C" fn trn_graph_from_json(
    json: *const c_char,
    out: *mut *mut TrnGraph,
) -> TrnStatus {
    if out.is_null() {
        set_error("null out pointer");
        return TrnStatus::NullArgument;
    }
    let text = match cstr_input(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| {
        let g = io::parse_graph_json(text)?;
        *out = Box::into_raw(Box::new(TrnGraph(g)));
        Ok(TrnStatus::Ok)
    })
}

/// Frees a graph handle. Null is a no-op.
///
/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn trn_graph_free(g: *mut TrnGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Serializes a graph to JSON; free the result with [`trn_string_free`].
///
/// # Safety
/// `g` must be a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn trn_graph_to_json(g: *const TrnGraph) -> *mut c_char {
    if g.is_null() {
        set_error("null graph handle");
        return std::ptr::null_mut();
    }
    let json = io::emit_graph_json(&(*g).0);
    CString::new(json).unwrap().into_raw()
}

/// Vertex count of a graph handle.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_graph_n(g: *const TrnGraph, out: *mut usize) -> TrnStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return TrnStatus::NullArgument;
    }
    *out = (*g).0.n();
    TrnStatus::Ok
}

/// Edge count of a graph handle.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_graph_edge_count(g: *const TrnGraph, out: *mut u64) -> TrnStatus {
    if g.is_null() || out.is_null() {
        set_error("null argument");
        return TrnStatus::NullArgument;
    }
    *out = (*g).0.edge_count();
    TrnStatus::Ok
}

/// Parses a hypergraph from JSON `{"r": int, "n": int, "edges": [...]}`.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be valid. On
/// success `*out` owns a handle freed with [`trn_hypergraph_free`].
#[no_mangle]
pub unsafe extern "C" fn trn_hypergraph_from_json(
    json: *const c_char,
    out: *mut *mut TrnHypergraph,
) -> TrnStatus {
    if out.is_null() {
        set_error("null out pointer");
        return TrnStatus::NullArgument;
    }
    let text = match cstr_input(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guarded(|| {
        let f = io::parse_hypergraph_json(text)?;
        *out = Box::into_raw(Box::new(TrnHypergraph(f)));
        Ok(TrnStatus::Ok)
    })
}

/// Frees a hypergraph handle. Null is a no-op.
///
/// # Safety
/// `f` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn trn_hypergraph_free(f: *mut TrnHypergraph) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Samples a random r-uniform hypergraph with the library's deterministic
/// counter-based generator.
///
/// # Safety
/// `out` must be valid. On success `*out` owns a handle.
#[no_mangle]
pub unsafe extern "C" fn trn_sample_hypergraph(
    r: usize,
    n: usize,
    p: f64,
    seed: u64,
    out: *mut *mut TrnHypergraph,
) -> TrnStatus {
    if out.is_null() {
        set_error("null out pointer");
        return TrnStatus::NullArgument;
    }
    guarded(|| {
        let f = turannical::experiments::sample_hypergraph(r, n, p, seed)?;
        *out = Box::into_raw(Box::new(TrnHypergraph(f)));
        Ok(TrnStatus::Ok)
    })
}

/// The Turán number t_r(n).
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_turan_number(r: usize, n: usize, out: *mut u64) -> TrnStatus {
    if out.is_null() {
        set_error("null out pointer");
        return TrnStatus::NullArgument;
    }
    guarded(|| {
        *out = turan::turan_number(r, n)?;
        Ok(TrnStatus::Ok)
    })
}

/// The restricted extremal number: maximum edges with no K_r meeting a
/// fixed m-set.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_turm(r: usize, n: usize, m: usize, out: *mut u64) -> TrnStatus {
    if out.is_null() {
        set_error("null out pointer");
        return TrnStatus::NullArgument;
    }
    guarded(|| {
        *out = turan::turm(r, n, m)?;
        Ok(TrnStatus::Ok)
    })
}

/// Does some hyperedge of `f` induce a complete graph in `g`?
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_detects(
    f: *const TrnHypergraph,
    g: *const TrnGraph,
    out: *mut bool,
) -> TrnStatus {
    if f.is_null() || g.is_null() || out.is_null() {
        set_error("null argument");
        return TrnStatus::NullArgument;
    }
    guarded(|| {
        *out = detect::detects(&(*f).0, &(*g).0)?.detected;
        Ok(TrnStatus::Ok)
    })
}

/// Number of hyperedges of `f` inducing complete graphs in `g`.
///
/// # Safety
/// `f` and `g` must be live handles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_detected_clique_count(
    f: *const TrnHypergraph,
    g: *const TrnGraph,
    out: *mut u64,
) -> TrnStatus {
    if f.is_null() || g.is_null() || out.is_null() {
        set_error("null argument");
        return TrnStatus::NullArgument;
    }
    guarded(|| {
        *out = detect::detected_clique_count(&(*f).0, &(*g).0)?;
        Ok(TrnStatus::Ok)
    })
}

fn to_verdict(v: Verdict) -> TrnVerdict {
    match v {
        Verdict::Holds => TrnVerdict::Holds,
        Verdict::Fails => TrnVerdict::Fails,
        Verdict::Unknown => TrnVerdict::Unknown,
    }
}

/// Decides whether `f` is exactly Turánnical within the node budget
/// (0 means the default budget). `max_undetected` receives the certified
/// undetected edge count of the returned decision's witness.
///
/// # Safety
/// `f` must be a live handle; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_is_turannical(
    f: *const TrnHypergraph,
    budget_nodes: u64,
    verdict: *mut TrnVerdict,
    max_undetected: *mut u64,
) -> TrnStatus {
    if f.is_null() || verdict.is_null() || max_undetected.is_null() {
        set_error("null argument");
        return TrnStatus::NullArgument;
    }
    guarded(|| {
        let budget = if budget_nodes == 0 {
            SearchBudget::default()
        } else {
            SearchBudget::nodes(budget_nodes)
        };
        let (v, rep) = solver::is_turannical(&(*f).0, budget)?;
        *verdict = to_verdict(v);
        *max_undetected = rep.max_undetected_edges;
        Ok(TrnStatus::Ok)
    })
}

/// Decides whether `f` is eps-Turánnical within the node budget
/// (0 means the default budget).
///
/// # Safety
/// `f` must be a live handle; out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn trn_is_eps_turannical(
    f: *const TrnHypergraph,
    eps: f64,
    budget_nodes: u64,
    verdict: *mut TrnVerdict,
    max_undetected: *mut u64,
) -> TrnStatus {
    if f.is_null() || verdict.is_null() || max_undetected.is_null() {
        set_error("null argument");
        return TrnStatus::NullArgument;
    }
    guarded(|| {
        let budget = if budget_nodes == 0 {
            SearchBudget::default()
        } else {
            SearchBudget::nodes(budget_nodes)
        };
        let (v, rep) = solver::is_eps_turannical(&(*f).0, eps, budget)?;
        *verdict = to_verdict(v);
        *max_undetected = rep.max_undetected_edges;
        Ok(TrnStatus::Ok)
    })
}
