//! C ABI for the rigraph library.
//!
//! Conventions:
//! * graphs are opaque `RigGraph` handles, created by the generators or the
//!   edge-list parser and released with `rig_graph_free`;
//! * every fallible call returns a `RigStatus` and writes its result through
//!   out-pointers, which are left untouched on failure;
//! * strings returned by the library are released with `rig_string_free`;
//! * panics never cross the boundary; they surface as `RIG_STATUS_INTERNAL`.

// Pointer arguments are null-checked at every entry point and documented as
// owned/borrowed; the usual `unsafe fn` marker would only push the same
// contract onto bindings that cannot express it.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rigraph::coupling::{chernoff_bound, phat_minus, tv_bound};
use rigraph::gen::{gen_gnp, gen_rig};
use rigraph::props::{
    hamilton_solve, has_perfect_matching, is_connected, is_k_connected, HamiltonBudget,
    HamiltonStatus,
};
use rigraph::thresholds::{threshold_p, Model, PropertyKind, ThresholdQuery};
use rigraph::{Graph, RigError, Seed};

/// Status code of every fallible C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigStatus {
    RigStatusOk = 0,
    /// A parameter violated a precondition.
    RigStatusInvalidArgument = 1,
    /// Text input could not be parsed.
    RigStatusParse = 2,
    /// A required pointer was null.
    RigStatusNullPointer = 3,
    /// Internal failure (a panic was caught at the boundary).
    RigStatusInternal = 4,
}

/// Tri-state verdict of the Hamilton solver.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigTernary {
    RigNo = 0,
    RigYes = 1,
    RigUnresolved = 2,
}

/// Opaque graph handle.
pub struct RigGraph {
    inner: Graph,
}

/// Model selector for `rig_threshold_p`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigModel {
    RigModelGnp = 0,
    RigModelRig = 1,
}

/// Property selector for `rig_threshold_p`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RigProperty {
    RigPropertyConnectivity = 0,
    RigPropertyKConnectivity = 1,
    RigPropertyPerfectMatching = 2,
    RigPropertyHamilton = 3,
    RigPropertyMinDegreeK = 4,
}

fn status_of(e: &RigError) -> RigStatus {
    match e {
        RigError::Parse { .. } => RigStatus::RigStatusParse,
        RigError::Io(_) => RigStatus::RigStatusInternal,
        _ => RigStatus::RigStatusInvalidArgument,
    }
}

fn guarded<F: FnOnce() -> RigStatus>(f: F) -> RigStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(RigStatus::RigStatusInternal)
}

/// Writes a successful result through `out`, or maps the error to a status.
fn finish<T>(result: Result<T, RigError>, out: *mut T) -> RigStatus {
    match result {
        Ok(value) => {
            // out was null-checked by the caller
            unsafe { out.write(value) };
            RigStatus::RigStatusOk
        }
        Err(e) => status_of(&e),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return RigStatus::RigStatusNullPointer;
        })+
    };
}

fn graph_out(result: Result<Graph, RigError>, out: *mut *mut RigGraph) -> RigStatus {
    finish(
        result.map(|g| Box::into_raw(Box::new(RigGraph { inner: g }))),
        out,
    )
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn rig_status_message(status: RigStatus) -> *const c_char {
    let msg: &'static [u8] = match status {
        RigStatus::RigStatusOk => b"ok\0",
        RigStatus::RigStatusInvalidArgument => b"invalid argument\0",
        RigStatus::RigStatusParse => b"parse error\0",
        RigStatus::RigStatusNullPointer => b"null pointer\0",
        RigStatus::RigStatusInternal => b"internal error\0",
    };
    msg.as_ptr().cast()
}

/// Sample G(n, p_hat).
#[no_mangle]
pub extern "C" fn rig_gen_gnp(
    n: usize,
    p_hat: f64,
    seed_root: u64,
    seed_stream: u64,
    out: *mut *mut RigGraph,
) -> RigStatus {
    non_null!(out);
    guarded(|| {
        let seed = Seed::new(seed_root).substream(seed_stream);
        graph_out(gen_gnp(n, p_hat, seed), out)
    })
}

/// Sample the random intersection graph G(n, m, p).
#[no_mangle]
pub extern "C" fn rig_gen_rig(
    n: usize,
    m: u64,
    p: f64,
    seed_root: u64,
    seed_stream: u64,
    out: *mut *mut RigGraph,
) -> RigStatus {
    non_null!(out);
    guarded(|| {
        let seed = Seed::new(seed_root).substream(seed_stream);
        graph_out(gen_rig(n, m, p, seed).map(|(_, g)| g), out)
    })
}

/// Parse the edge-list text format ("n <n>" header, one "u v" line per edge).
#[no_mangle]
pub extern "C" fn rig_graph_from_edge_list(
    text: *const c_char,
    out: *mut *mut RigGraph,
) -> RigStatus {
    non_null!(text, out);
    guarded(|| {
        let text = match unsafe { CStr::from_ptr(text) }.to_str() {
            Ok(t) => t,
            Err(_) => return RigStatus::RigStatusParse,
        };
        graph_out(Graph::from_edge_list(text), out)
    })
}

/// Render the edge-list text format; release with `rig_string_free`.
#[no_mangle]
pub extern "C" fn rig_graph_to_edge_list(
    graph: *const RigGraph,
    out: *mut *mut c_char,
) -> RigStatus {
    non_null!(graph, out);
    guarded(|| {
        let text = unsafe { &(*graph).inner }.to_edge_list();
        match CString::new(text) {
            Ok(s) => finish(Ok(s.into_raw()), out),
            Err(_) => RigStatus::RigStatusInternal,
        }
    })
}

/// Release a graph handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn rig_graph_free(graph: *mut RigGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Release a string returned by this library. Null is a no-op.
#[no_mangle]
pub extern "C" fn rig_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Number of vertices; 0 for null.
#[no_mangle]
pub extern "C" fn rig_graph_n(graph: *const RigGraph) -> usize {
    if graph.is_null() {
        return 0;
    }
    unsafe { &(*graph).inner }.n()
}

/// Number of edges; 0 for null.
#[no_mangle]
pub extern "C" fn rig_graph_edge_count(graph: *const RigGraph) -> usize {
    if graph.is_null() {
        return 0;
    }
    unsafe { &(*graph).inner }.edge_count()
}

/// Minimum degree; 0 for null.
#[no_mangle]
pub extern "C" fn rig_graph_min_degree(graph: *const RigGraph) -> usize {
    if graph.is_null() {
        return 0;
    }
    unsafe { &(*graph).inner }.min_degree()
}

#[no_mangle]
pub extern "C" fn rig_graph_has_edge(
    graph: *const RigGraph,
    u: u32,
    v: u32,
    out: *mut bool,
) -> RigStatus {
    non_null!(graph, out);
    guarded(|| finish(Ok(unsafe { &(*graph).inner }.has_edge(u, v)), out))
}

#[no_mangle]
pub extern "C" fn rig_is_connected(graph: *const RigGraph, out: *mut bool) -> RigStatus {
    non_null!(graph, out);
    guarded(|| finish(Ok(is_connected(unsafe { &(*graph).inner })), out))
}

#[no_mangle]
pub extern "C" fn rig_is_k_connected(
    graph: *const RigGraph,
    k: usize,
    out: *mut bool,
) -> RigStatus {
    non_null!(graph, out);
    guarded(|| finish(Ok(is_k_connected(unsafe { &(*graph).inner }, k)), out))
}

#[no_mangle]
pub extern "C" fn rig_has_perfect_matching(
    graph: *const RigGraph,
    out: *mut bool,
) -> RigStatus {
    non_null!(graph, out);
    guarded(|| finish(Ok(has_perfect_matching(unsafe { &(*graph).inner })), out))
}

/// Decide Hamiltonicity within the default search budget.
#[no_mangle]
pub extern "C" fn rig_hamilton(graph: *const RigGraph, out: *mut RigTernary) -> RigStatus {
    non_null!(graph, out);
    guarded(|| {
        let verdict = hamilton_solve(unsafe { &(*graph).inner }, &HamiltonBudget::default());
        finish(
            verdict.map(|v| match v.status {
                HamiltonStatus::Yes => RigTernary::RigYes,
                HamiltonStatus::No => RigTernary::RigNo,
                HamiltonStatus::Unresolved => RigTernary::RigUnresolved,
            }),
            out,
        )
    })
}

/// Evaluate the sharp-threshold formula. For the intersection-graph model,
/// `m` is the feature count; for G(n, p_hat) it is ignored.
#[no_mangle]
pub extern "C" fn rig_threshold_p(
    model: RigModel,
    property: RigProperty,
    n: usize,
    m: u64,
    k: usize,
    omega: f64,
    out: *mut f64,
) -> RigStatus {
    non_null!(out);
    guarded(|| {
        let query = ThresholdQuery {
            model: match model {
                RigModel::RigModelGnp => Model::Gnp,
                RigModel::RigModelRig => Model::Rig,
            },
            n,
            m: Some(m),
            alpha: None,
            k,
            omega,
            kind: match property {
                RigProperty::RigPropertyConnectivity => PropertyKind::Connectivity,
                RigProperty::RigPropertyKConnectivity => PropertyKind::KConnectivity,
                RigProperty::RigPropertyPerfectMatching => PropertyKind::PerfectMatching,
                RigProperty::RigPropertyHamilton => PropertyKind::Hamilton,
                RigProperty::RigPropertyMinDegreeK => PropertyKind::MinDegreeK,
            },
        };
        finish(threshold_p(&query), out)
    })
}

/// The lower coupling probability p_hat_minus; `clamped` reports whether the
/// raw formula went negative and was clamped to 0. Pass omega_c <= 0 for the
/// default divergence parameter.
#[no_mangle]
pub extern "C" fn rig_phat_minus(
    n: usize,
    m: u64,
    p: f64,
    omega_c: f64,
    out: *mut f64,
    clamped: *mut bool,
) -> RigStatus {
    non_null!(out, clamped);
    guarded(|| {
        let oc = (omega_c > 0.0).then_some(omega_c);
        match phat_minus(n, m, p, oc) {
            Ok(r) => {
                unsafe {
                    out.write(r.value);
                    clamped.write(r.clamped);
                }
                RigStatus::RigStatusOk
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Chernoff bound 2 exp(-3 t^2 / (2 (3 mean + t))).
#[no_mangle]
pub extern "C" fn rig_chernoff_bound(mean: f64, t: f64, out: *mut f64) -> RigStatus {
    non_null!(out);
    guarded(|| finish(chernoff_bound(mean, t), out))
}

/// Total-variation bound 2 p_hat of the auxiliary-multigraph approximation.
#[no_mangle]
pub extern "C" fn rig_tv_bound(p_hat: f64) -> f64 {
    tv_bound(p_hat)
}
