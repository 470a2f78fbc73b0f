//! C ABI over `relcent`.
//!
//! Graphs live behind an opaque `RcGraph` handle. Every fallible call returns
//! an `RcStatus`; on failure `rc_last_error()` describes the cause until the
//! next call on the same thread. Values are written into caller-owned buffers.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use relcent::centrality::{compute, ComputeOptions, Metric, Weighting};
use relcent::{io, EdgeRecord, Error, FMatrix, Graph, RelevanceFunction, RelevanceVector};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed graph, relevance, function or parameter.
    InvalidInput = 3,
    /// Computation failed (path explosion, overflow, non-finite result).
    Computation = 4,
    /// Output buffer length does not match the element count.
    BufferSize = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcMetric {
    Degree = 0,
    Harmonic = 1,
    Betweenness = 2,
    EdgeBetweenness = 3,
}

impl From<RcMetric> for Metric {
    fn from(m: RcMetric) -> Self {
        match m {
            RcMetric::Degree => Metric::Degree,
            RcMetric::Harmonic => Metric::Harmonic,
            RcMetric::Betweenness => Metric::VertexBetweenness,
            RcMetric::EdgeBetweenness => Metric::EdgeBetweenness,
        }
    }
}

/// `Classic` ignores relevance.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RcFunction {
    Classic = 0,
    Product = 1,
    Mean = 2,
    Source = 3,
    Max = 4,
    PathSum = 5,
    PathProduct = 6,
}

impl RcFunction {
    fn to_function(self) -> Option<RelevanceFunction> {
        Some(match self {
            RcFunction::Classic => return None,
            RcFunction::Product => RelevanceFunction::Product,
            RcFunction::Mean => RelevanceFunction::Mean,
            RcFunction::Source => RelevanceFunction::SourceOnly,
            RcFunction::Max => RelevanceFunction::Max,
            RcFunction::PathSum => RelevanceFunction::PathSum,
            RcFunction::PathProduct => RelevanceFunction::PathProduct,
        })
    }
}

/// Opaque graph handle.
pub struct RcGraph {
    graph: Graph,
    labels: Vec<CString>,
}

impl RcGraph {
    fn new(graph: Graph) -> Self {
        let labels = graph
            .labels()
            .iter()
            .map(|l| CString::new(l.as_str()).unwrap_or_default())
            .collect();
        Self { graph, labels }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: RcStatus, msg: impl Into<String>) -> RcStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> RcStatus {
    let status = if e.is_input_error() {
        RcStatus::InvalidInput
    } else {
        RcStatus::Computation
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> RcStatus) -> RcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(RcStatus::Panic, "internal panic"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, RcStatus> {
    if p.is_null() {
        return Err(fail(RcStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(RcStatus::InvalidUtf8, "string is not valid UTF-8"))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next `rc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn rc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph from `n_edges` label pairs. `weights` may be NULL for an
/// unweighted graph.
///
/// # Safety
/// `sources` and `targets` point to `n_edges` NUL-terminated strings;
/// `weights`, when non-NULL, to `n_edges` doubles; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_from_edges(
    sources: *const *const c_char,
    targets: *const *const c_char,
    weights: *const f64,
    n_edges: usize,
    out: *mut *mut RcGraph,
) -> RcStatus {
    guard(|| {
        if out.is_null() || (n_edges > 0 && (sources.is_null() || targets.is_null())) {
            return fail(RcStatus::NullPointer, "null argument");
        }
        let mut records = Vec::with_capacity(n_edges);
        for i in 0..n_edges {
            let s = tri!(read_str(*sources.add(i)));
            let t = tri!(read_str(*targets.add(i)));
            records.push(match weights.is_null() {
                true => EdgeRecord::new(s, t),
                false => EdgeRecord::weighted(s, t, *weights.add(i)),
            });
        }
        match Graph::from_edges(&records) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(RcGraph::new(g)));
                RcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Loads an edge CSV (`source,target[,weight]`).
///
/// # Safety
/// `path` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_load_csv(path: *const c_char, out: *mut *mut RcGraph) -> RcStatus {
    guard(|| {
        if out.is_null() {
            return fail(RcStatus::NullPointer, "null argument");
        }
        let path = tri!(read_str(path));
        match io::load_graph(Path::new(path)) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(RcGraph::new(g)));
                RcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `g` is NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_free(g: *mut RcGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` is a live handle or NULL (yields 0).
#[no_mangle]
pub unsafe extern "C" fn rc_graph_vertex_count(g: *const RcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.vertex_count())
}

/// # Safety
/// `g` is a live handle or NULL (yields 0).
#[no_mangle]
pub unsafe extern "C" fn rc_graph_edge_count(g: *const RcGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edge_count())
}

/// Label of vertex `v`, or NULL when out of range. Owned by the handle.
///
/// # Safety
/// `g` is a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_vertex_label(g: *const RcGraph, v: usize) -> *const c_char {
    g.as_ref()
        .and_then(|g| g.labels.get(v))
        .map_or(ptr::null(), |s| s.as_ptr())
}

/// Endpoints of edge `e` as vertex indices.
///
/// # Safety
/// `g` is a live handle; `u` and `v` are writable.
#[no_mangle]
pub unsafe extern "C" fn rc_graph_edge_endpoints(
    g: *const RcGraph,
    e: usize,
    u: *mut usize,
    v: *mut usize,
) -> RcStatus {
    guard(|| {
        let (Some(g), false, false) = (g.as_ref(), u.is_null(), v.is_null()) else {
            return fail(RcStatus::NullPointer, "null argument");
        };
        if e >= g.graph.edge_count() {
            return fail(RcStatus::InvalidInput, format!("edge {e} out of range"));
        }
        let edge = g.graph.edge(e);
        *u = edge.u;
        *v = edge.v;
        RcStatus::Ok
    })
}

#[allow(clippy::too_many_arguments)]
unsafe fn run(
    g: *const RcGraph,
    metric: RcMetric,
    function: Option<RelevanceFunction>,
    relevance: *const f64,
    relevance_len: usize,
    workers: usize,
    out: *mut f64,
    out_len: usize,
) -> RcStatus {
    let Some(g) = g.as_ref() else {
        return fail(RcStatus::NullPointer, "null graph");
    };
    if out.is_null() {
        return fail(RcStatus::NullPointer, "null output buffer");
    }
    let metric = Metric::from(metric);
    let expected = match metric {
        Metric::EdgeBetweenness => g.graph.edge_count(),
        _ => g.graph.vertex_count(),
    };
    if out_len != expected {
        return fail(
            RcStatus::BufferSize,
            format!("output buffer holds {out_len} values, {expected} needed"),
        );
    }
    let relevance = if relevance.is_null() {
        RelevanceVector::ones(g.graph.vertex_count())
    } else {
        let values = std::slice::from_raw_parts(relevance, relevance_len).to_vec();
        match RelevanceVector::new(values) {
            Ok(r) => r,
            Err(e) => return from_error(e),
        }
    };
    let weighting = match &function {
        Some(f) => Weighting::relevance(&relevance, f),
        None => Weighting::Classic,
    };
    let opts = ComputeOptions {
        workers: (workers > 0).then_some(workers),
        ..ComputeOptions::default()
    };
    match compute(&g.graph, metric, weighting, &opts) {
        Ok(report) => {
            std::slice::from_raw_parts_mut(out, out_len).copy_from_slice(&report.values);
            RcStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Computes `metric` into `out`, which must hold one value per vertex (one
/// per edge for `EdgeBetweenness`, in `rc_graph_edge_endpoints` order).
/// `relevance` may be NULL for unit relevance. `workers` = 0 uses the
/// default thread count.
///
/// # Safety
/// `g` is a live handle; `relevance`, when non-NULL, points to
/// `relevance_len` doubles; `out` points to `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rc_compute(
    g: *const RcGraph,
    metric: RcMetric,
    function: RcFunction,
    relevance: *const f64,
    relevance_len: usize,
    workers: usize,
    out: *mut f64,
    out_len: usize,
) -> RcStatus {
    guard(|| {
        run(
            g,
            metric,
            function.to_function(),
            relevance,
            relevance_len,
            workers,
            out,
            out_len,
        )
    })
}

/// Like `rc_compute` with a user-supplied pair matrix: `matrix` is row-major
/// `n × n` with `matrix[s*n + t]` weighting pair (s, t) and a zero diagonal.
///
/// # Safety
/// `g` is a live handle; `matrix` points to `n*n` doubles where `n` is the
/// vertex count; `out` points to `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rc_compute_matrix(
    g: *const RcGraph,
    metric: RcMetric,
    matrix: *const f64,
    workers: usize,
    out: *mut f64,
    out_len: usize,
) -> RcStatus {
    guard(|| {
        let Some(gr) = g.as_ref() else {
            return fail(RcStatus::NullPointer, "null graph");
        };
        if matrix.is_null() {
            return fail(RcStatus::NullPointer, "null matrix");
        }
        let n = gr.graph.vertex_count();
        let flat = std::slice::from_raw_parts(matrix, n * n);
        let rows = flat.chunks(n.max(1)).take(n).map(<[f64]>::to_vec).collect();
        let f = match FMatrix::from_rows(rows) {
            Ok(m) => RelevanceFunction::matrix(m),
            Err(e) => return from_error(e),
        };
        if let Err(e) = f.validate(Some(n)) {
            return from_error(e);
        }
        run(g, metric, Some(f), ptr::null(), 0, workers, out, out_len)
    })
}
