use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid form: {0}")]
    Form(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("wall error: {0}")]
    Wall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
