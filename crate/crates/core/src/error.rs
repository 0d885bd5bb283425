use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parallel edge {0}-{1} in a simple graph")]
    ParallelEdge(usize, usize),
    #[error("length {got} does not match the edge count {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("objects refer to different graphs")]
    GraphMismatch,
    #[error("dimension {0} outside the supported range 0..=64")]
    DimensionOutOfRange(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vector has {support}-element support in dimension {dim}; need odd support smaller than the dimension")]
    BadSupport { support: usize, dim: usize },
    #[error("{count} edges exceed the enumeration guard of {limit}; pass the force option to override")]
    TooManyEdges { count: usize, limit: usize },
    #[error("{count} vertices exceed the guard of {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("time budget exhausted")]
    BudgetExhausted,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("ordering is not {t}-strong at vertex {vertex}")]
    NotStrong { t: usize, vertex: usize },
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("no reducible configuration found in a graph with {n} vertices and {m} edges: {instance}")]
    DischargingContradiction { n: usize, m: usize, instance: String },
    #[error("internal invariant violated (this is a bug): {0}")]
    Invariant(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
