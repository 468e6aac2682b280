use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("matrix is not skew-symmetric at ({0}, {1})")]
    NotSkewSymmetric(usize, usize),
    #[error("malformed quiver: {0}")]
    Parse(String),
    #[error("integer overflow during {0}")]
    Overflow(&'static str),
    #[error("zero vector has no primitive normalization")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rays are linearly dependent")]
    DegenerateCone,
}

pub type Result<T> = std::result::Result<T, Error>;
