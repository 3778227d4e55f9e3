use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension n = {n} outside the supported range 1..={max}")]
    DimensionOutOfRange { n: usize, max: usize },

    #[error("{what} = {value} out of range (maximum {max})")]
    IndexOutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("input is not a probability mass function (sum = {sum})")]
    NotAPmf { sum: String },

    #[error("{what} needs n = {n}, beyond the budget of {limit}")]
    BudgetExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("exact integer arithmetic would overflow 128 bits")]
    ExactOverflow,

    #[error("operation requires a radial kernel")]
    NotRadial,

    #[error("inner code is not a subcode of the outer code")]
    NotNested,

    #[error("inconsistent distance distribution: {0}")]
    InconsistentDistribution(String),

    #[error("unsupported Renyi order {0} for this operation")]
    UnsupportedOrder(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
