use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition of length {len} exceeds the variable count {n}")]
    LengthExceeded { len: usize, n: usize },
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by exact zero: {0}")]
    DivisionByZero(String),
    #[error("insufficient precision: {0}")]
    Precision(String),
    #[error("valuation violation: {0}")]
    Valuation(String),
    #[error("pole at {index}: {detail}")]
    Pole { index: String, detail: String },
    #[error("indeterminate term at {0}")]
    Indeterminate(String),
    #[error("infinite product {0} does not collapse at a rational point")]
    NotCollapsible(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("unknown identity {0}")]
    UnknownIdentity(String),
}
