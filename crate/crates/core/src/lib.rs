//! Classic and relevance-embedded centrality metrics for undirected graphs.
//!
//! Every vertex carries an intrinsic relevance `R_v > 0`. A relevance function
//! `f(R_s, R_t)` (pairwise, path-dependent, or an explicit matrix) weights the
//! contribution of each vertex pair to degree, harmonic closeness, vertex
//! betweenness and edge betweenness. With all relevances equal to one the
//! metrics reduce to their classic definitions.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: immutable simple undirected graph with positive distances.
//! * [`relevance`]: relevance vectors and relevance functions.
//! * [`paths`]: single-source shortest paths with path counts and predecessor DAGs.
//! * [`centrality`]: the four metrics and rankings.
//! * [`oracle`]: brute-force reference implementations.
//! * [`generators`]: ring lattices, Watts–Strogatz graphs and random relevance.
//! * [`experiments`]: classic-vs-extended correlation sweeps.
//! * [`io`]: CSV loaders, result JSON and Graphviz export.

pub mod centrality;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod paths;
pub mod relevance;

pub use centrality::{CentralityReport, ComputeOptions, Element, Engine, Metric};
pub use error::{Error, Result};
pub use graph::{Adjacent, Edge, EdgeRecord, Graph, GraphBuilder};
pub use paths::ShortestPathDag;
pub use relevance::{FMatrix, RelevanceFunction, RelevanceVector};

/// Relative tolerance used to decide that two path lengths are tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Returns true when two candidate distances are equal within [`TIE_TOLERANCE`].
#[inline]
pub fn is_tied(d1: f64, d2: f64) -> bool {
    (d1 - d2).abs() <= TIE_TOLERANCE * 1f64.max(d1.abs()).max(d2.abs())
}
