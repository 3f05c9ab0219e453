use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("pivot entry ({row}, {col}) is zero")]
    ZeroPivot { row: usize, col: usize },
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("invalid element label {0:?}")]
    InvalidLabel(String),
    #[error("unknown element label {0:?}")]
    UnknownLabel(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("{0}")]
    Precondition(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
