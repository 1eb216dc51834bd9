//! C ABI over `corona-walk`.
//!
//! Conventions:
//! * Every fallible function returns a [`CwStatus`]; on anything other than
//!   `CW_STATUS_OK` the message is available from [`cw_last_error_message`]
//!   on the same thread.
//! * Graphs are opaque `CwGraph*` handles released with [`cw_graph_free`].
//! * Strings returned through `char**` out-parameters are owned by the
//!   caller and released with [`cw_string_free`].
//! * Panics never cross the boundary; they surface as `CW_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use corona_walk::cli::{search_pgst, ConstructionArg};
use corona_walk::graphs::{neighborhood_corona, FamilySpec, Graph};
use corona_walk::spectral_core::{eigendecompose, transition_amplitude, DEFAULT_CLUSTER_TOL};
use corona_walk::transfer_pgst::DEFAULT_ALPHA_MAX;
use corona_walk::transfer_pst::certify_pst;
use corona_walk::Error;

/// Opaque graph handle.
pub struct CwGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    UnknownFamily = 4,
    InvalidGraph = 5,
    VertexOutOfRange = 6,
    Parse = 7,
    HypothesisNotMet = 8,
    Undecidable = 9,
    BudgetExceeded = 10,
    NoConvergence = 11,
    Internal = 12,
    Panic = 13,
}

impl From<&Error> for CwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::UnknownFamily(_) => CwStatus::UnknownFamily,
            Error::InvalidGraph(_) => CwStatus::InvalidGraph,
            Error::InvalidArgument(_) | Error::IncompatibleRadicands(..) | Error::DivisionByZero => {
                CwStatus::InvalidArgument
            }
            Error::VertexOutOfRange { .. } => CwStatus::VertexOutOfRange,
            Error::Parse(_) => CwStatus::Parse,
            Error::HypothesisNotMet(_) => CwStatus::HypothesisNotMet,
            Error::Undecidable(_) => CwStatus::Undecidable,
            Error::BudgetExceeded { .. } => CwStatus::BudgetExceeded,
            Error::NoConvergence { .. } => CwStatus::NoConvergence,
            Error::MultiplicityMismatch { .. } | Error::SupportInclusion(_) | Error::Consistency(_) => {
                CwStatus::Internal
            }
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CwConstruction {
    Auto = 0,
    Theorem51 = 1,
    Theorem53 = 2,
    Scan = 3,
}

/// Flat view of a PST certificate. Fields other than `is_pst` are zero
/// unless PST holds.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CwPstResult {
    pub is_pst: bool,
    pub delta: u64,
    pub g: u64,
    pub tau0: f64,
    pub phase_re: f64,
    pub phase_im: f64,
}

/// Flat view of a PGST witness. `alpha` is 0 for the scan construction.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CwPgstResult {
    pub success: bool,
    pub t0: f64,
    pub fidelity: f64,
    pub alpha: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(CwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(CwStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(CwStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f` with panic containment and error bookkeeping.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CwStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            CwStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(CwStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn graph_ref<'a>(g: *const CwGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn put_graph(out: *mut *mut CwGraph, g: Graph) {
    *out = Box::into_raw(Box::new(CwGraph { inner: g }));
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(CwStatus::Internal, "string contains nul".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Builds a family graph from a spec such as `"cycle:4"`.
///
/// # Safety
/// `spec` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_from_family(spec: *const c_char, out: *mut *mut CwGraph) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = read_str(spec, "spec")?;
        let g = spec.parse::<FamilySpec>()?.build()?;
        put_graph(out, g);
        Ok(())
    })
}

/// Parses the graph JSON format.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_from_json(json: *const c_char, out: *mut *mut CwGraph) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = Graph::from_json(read_str(json, "json")?)?;
        put_graph(out, g);
        Ok(())
    })
}

/// Serializes a graph; free the result with `cw_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_to_json(g: *const CwGraph, out: *mut *mut c_char) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, graph_ref(g)?.to_json())
    })
}

/// Neighborhood corona of `g1` and `g2`, as a new handle.
///
/// # Safety
/// `g1`, `g2` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_corona(
    g1: *const CwGraph,
    g2: *const CwGraph,
    out: *mut *mut CwGraph,
) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = neighborhood_corona(graph_ref(g1)?, graph_ref(g2)?);
        put_graph(out, g);
        Ok(())
    })
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_vertex_count(g: *const CwGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.n())
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
/// `g` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_free(g: *mut CwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Transition amplitude `(e^{-itA})[u][v]`.
///
/// # Safety
/// `g` must be a live handle; `re`, `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cw_transition_amplitude(
    g: *const CwGraph,
    u: usize,
    v: usize,
    t: f64,
    re: *mut f64,
    im: *mut f64,
) -> CwStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(null("out"));
        }
        let g = graph_ref(g)?;
        g.check_vertex(u)?;
        g.check_vertex(v)?;
        let d = eigendecompose(g, DEFAULT_CLUSTER_TOL)?;
        let a = transition_amplitude(&d, u, v, t)?;
        *re = a.re;
        *im = a.im;
        Ok(())
    })
}

/// PST certificate for `(u, v)`. A negative verdict still returns
/// `CW_STATUS_OK` with `is_pst = false`. `json_out` may be null; otherwise
/// it receives the full certificate JSON.
///
/// # Safety
/// `g` must be a live handle, `out` valid, `json_out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn cw_certify_pst(
    g: *const CwGraph,
    u: usize,
    v: usize,
    out: *mut CwPstResult,
    json_out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cert = certify_pst(graph_ref(g)?, u, v)?;
        let phase = cert.phase.as_ref();
        *out = CwPstResult {
            is_pst: cert.is_pst(),
            delta: cert.delta.unwrap_or(0),
            g: cert.g.unwrap_or(0),
            tau0: cert.tau0.unwrap_or(0.0),
            phase_re: phase.map_or(0.0, |p| p.re),
            phase_im: phase.map_or(0.0, |p| p.im),
        };
        if !json_out.is_null() {
            put_string(json_out, cert.to_json())?;
        }
        Ok(())
    })
}

/// PGST witness search. `alpha_max = 0` selects the default budget. The scan
/// construction searches `t ∈ [0, 100]` on 100001 samples. `json_out` may be
/// null.
///
/// # Safety
/// `g` must be a live handle, `out` valid, `json_out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn cw_search_pgst(
    g: *const CwGraph,
    u: usize,
    v: usize,
    epsilon: f64,
    alpha_max: u64,
    construction: CwConstruction,
    out: *mut CwPgstResult,
    json_out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let construction = match construction {
            CwConstruction::Auto => ConstructionArg::Auto,
            CwConstruction::Theorem51 => ConstructionArg::Theorem51,
            CwConstruction::Theorem53 => ConstructionArg::Theorem53,
            CwConstruction::Scan => ConstructionArg::Scan,
        };
        let alpha_max = if alpha_max == 0 { DEFAULT_ALPHA_MAX } else { alpha_max };
        let w = search_pgst(graph_ref(g)?, u, v, epsilon, alpha_max, construction, 0.0, 100.0, 100_001)?;
        *out = CwPgstResult { success: w.success, t0: w.t0.float, fidelity: w.fidelity, alpha: w.alpha.unwrap_or(0) };
        if !json_out.is_null() {
            put_string(json_out, w.to_json())?;
        }
        Ok(())
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread; do not free.
#[no_mangle]
pub extern "C" fn cw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
