use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the analysis routines and file loaders.
///
/// Vertex, row and time indices are stored 0-based (times 1-based, as in
/// the model) and rendered 1-based in messages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vertex {} out of range for a graph on {n} vertices", vertex + 1)]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("negative self-arc at vertex {}", vertex + 1)]
    NegativeSelfArc { vertex: usize },

    #[error("missing positive self-arc at vertex {}", vertex + 1)]
    MissingSelfArc { vertex: usize },

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("graph is not weakly connected; its class is not unique")]
    NotWeaklyConnected,

    #[error("graph is not rooted")]
    NotRooted,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite entry at ({}, {})", row + 1, col + 1)]
    NonFinite { row: usize, col: usize },

    #[error("non-positive diagonal entry {value} in row {}", row + 1)]
    NonPositiveDiagonal { row: usize, value: f64 },

    #[error("row {} has absolute row sum {sum}, expected 1", row + 1)]
    RowSumViolation { row: usize, sum: f64 },

    #[error("entry ({}, {}) has magnitude {value} below beta = {beta}", row + 1, col + 1)]
    BetaViolation { row: usize, col: usize, value: f64, beta: f64 },

    #[error("switching signal has no matrices")]
    EmptySignal,

    #[error("signal is not decidable: {0}")]
    UndecidableSignal(String),

    #[error("window starting at t={start} of length {length} is not jointly strongly connected")]
    NotJointlyStronglyConnected { start: usize, length: usize },

    #[error("stochastic sequence is not irreducible over the period: {0}")]
    NotIrreducible(String),

    #[error("{what} did not converge within {iterations} iterations")]
    NotConverged { what: &'static str, iterations: usize },

    #[error("hypothesis violated at t={time}: {reason}")]
    HypothesisViolation { time: usize, reason: String },

    #[error("trajectory is not contracting (spread ratio {ratio:.3} over the fit window)")]
    NonContracting { ratio: f64 },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("proposition violated: {0}")]
    PropositionViolation(String),

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error("I/O error on {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl ToString) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.to_string(),
        }
    }
}
