use thiserror::Error;

/// Errors produced by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("incompatible radicands {0} and {1}")]
    MixedRadicands(u64, u64),
    #[error("radicand {0} is not a square-free integer greater than 1")]
    BadRadicand(u64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precision exhausted at step {step}: interval straddles a rounding boundary")]
    PrecisionExhausted { step: usize },
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("not a Pisot polynomial: {0}")]
    NotPisot(String),
    #[error("word is not in the recodable class: {0}")]
    NotRecodable(String),
    #[error("insufficient data: {0}")]
    Insufficient(String),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
