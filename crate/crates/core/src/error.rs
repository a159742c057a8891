use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition has no positive parts")]
    EmptyPartition,

    #[error("cannot parse partition {input:?}: {reason}")]
    ParsePartition { input: String, reason: String },

    #[error("cannot parse polynomial {input:?}: {reason}")]
    ParsePolynomial { input: String, reason: String },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("n = {n} exceeds the configured bound {bound}")]
    BoundExceeded { n: usize, bound: usize },

    #[error("no value assigned to variable {0:?}")]
    MissingAssignment(String),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("block B_{{{p},{q}}} requires p >= q >= 1")]
    BadShape { p: usize, q: usize },

    #[error("conjugating matrix is singular")]
    SingularS,

    #[error("no nonzero minor of size {size} found after {trials} trials")]
    WitnessNotFound { size: usize, trials: usize },

    #[error("{count} variables cannot be named with single letters (limit 26)")]
    TooManyVariables { count: usize },

    #[error("cannot start worker pool: {0}")]
    ThreadPool(String),
}
