use thiserror::Error;

/// Errors produced by graph construction, parsing and the exact-arithmetic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {actual} vertices, above the configured bound of {limit}")]
    SizeLimitExceeded { actual: usize, limit: usize },

    #[error("orientation does not match the edge set of the graph")]
    OrientationMismatch,

    #[error("cover labeling does not match the Kronecker double cover: {0}")]
    LabelingMismatch(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("symmetric eigensolver did not converge")]
    EigenNotConverged,

    #[error("determinant degree exceeds the bound {0}")]
    DegreeBoundExceeded(usize),

    #[error("interpolation produced a non-integer coefficient")]
    NonIntegerInterpolation,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("search budget of {0} nodes exhausted")]
    SearchBudgetExceeded(u64),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
