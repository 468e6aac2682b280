use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("nilpotency bound violated: path {0} is nonzero")]
    Nilpotency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("complexes live over different algebras")]
    AlgebraMismatch,
    #[error("malformed complex: {0}")]
    Complex(String),
    #[error("{0}")]
    Field(String),
}

pub type Result<T> = std::result::Result<T, Error>;
