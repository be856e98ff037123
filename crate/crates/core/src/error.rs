use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("truncation budget exhausted: {0}")]
    Budget(String),
    #[error("singular parameters: {0}")]
    Singular(String),
    #[error("divergent configuration: {0}")]
    Divergent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
