use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is too large (symbols must fit a byte, so p <= 251)")]
    PrimeTooLarge(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid starting vector: {0}")]
    InvalidVariant(String),

    #[error("budget exceeded for {what}: requires {required}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u64,
        budget: u64,
    },

    #[error("code must contain at least two codewords")]
    TrivialCode,

    #[error("code does not contain the zero codeword")]
    ZeroMissing,

    #[error("not a generalized Hadamard code: {0}")]
    NotGhCode(String),

    #[error("no reference classification data for p = {0}")]
    UntabulatedPrime(u64),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
