use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent {exponent} is not on the grid (1/{denominator})Z")]
    OffGrid { exponent: String, denominator: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("truncation budget exceeded: {0}")]
    Budget(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("cutoff error: {0}")]
    Cutoff(String),

    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
