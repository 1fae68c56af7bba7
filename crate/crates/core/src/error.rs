use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational from {0:?}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("multi-index {0} is outside the truncated basis")]
    OutOfRange(String),

    #[error("invalid interval [{lo}, {hi}] for {legs} legs")]
    InvalidInterval { lo: usize, hi: usize, legs: usize },

    #[error("operators live on different bases")]
    BasisMismatch,

    #[error("generator {0} is not available in this registry")]
    MissingGenerator(String),

    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),

    #[error("unknown master-identity row {0:?}")]
    UnknownRow(String),

    #[error("malformed table data: {0}")]
    TableData(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),
}
