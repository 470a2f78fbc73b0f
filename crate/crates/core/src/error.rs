use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("record {record}: empty vertex label")]
    EmptyLabel { record: usize },

    #[error("record {record}: self-loop on vertex {label:?}")]
    SelfLoop { record: usize, label: String },

    #[error("record {record}: duplicate edge {u:?}-{v:?}")]
    DuplicateEdge { record: usize, u: String, v: String },

    #[error("record {record}: edge weight {weight} must be strictly positive and finite")]
    NonPositiveWeight { record: usize, weight: f64 },

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("vertex index {index} out of range for graph with {len} vertices")]
    VertexOutOfRange { index: usize, len: usize },

    #[error("relevance of vertex {label:?} is {value}; relevance must be strictly positive and finite")]
    InvalidRelevance { label: String, value: f64 },

    #[error("relevance vector has {got} entries, graph has {expected} vertices")]
    RelevanceLength { expected: usize, got: usize },

    #[error("path-dependent relevance function {0} requires a path, not a vertex pair")]
    PathVariantRequiresPath(&'static str),

    #[error("relevance function {0} is path-dependent and cannot weight degree centrality")]
    PathVariantNotApplicable(&'static str),

    #[error("relevance function queried on the diagonal (s = t = {0})")]
    DiagonalQuery(usize),

    #[error("a path needs at least two vertices, got {0}")]
    EmptyPath(usize),

    #[error("relevance matrix shape mismatch: {0}")]
    MatrixShapeMismatch(String),

    #[error("relevance matrix has nonzero diagonal entry {value} for vertex {label:?}")]
    NonzeroDiagonal { label: String, value: f64 },

    #[error("vertex {0:?} is not reachable from the source")]
    Unreachable(String),

    #[error("{count} shortest paths exceed the enumeration cap of {cap}")]
    PathExplosion { count: u64, cap: u64 },

    #[error("shortest-path count overflowed a 64-bit counter")]
    PathCountOverflow,

    #[error("invalid degree d={d} for n={n}: d must be even with 0 < d < n")]
    InvalidDegree { n: usize, d: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vectors have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("correlation needs at least two observations, got {0}")]
    TooFewObservations(usize),

    #[error("graph has {vertices} vertices, oracle limit is {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("{0} produced a non-finite value")]
    NonFinite(String),

    #[error("{}:{line}: {message}", path.display())]
    MalformedRow {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{}:{line}: relevance given for unknown vertex {label:?}", path.display())]
    UnknownVertexInRelevance {
        path: PathBuf,
        line: u64,
        label: String,
    },

    #[error("experiment cell {cell}: {source}")]
    Cell {
        cell: String,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by bad input files or parameters, as opposed to failures
    /// during computation.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::PathExplosion { .. }
            | Error::PathCountOverflow
            | Error::NonFinite(_)
            | Error::TooLarge { .. }
            | Error::Unreachable(_)
            | Error::Json(_) => false,
            Error::Cell { source, .. } => source.is_input_error(),
            _ => true,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
