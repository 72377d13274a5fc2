//! Crate-wide error type and exit-code mapping for the CLI.

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero")]
    DivisionByZero,

    /// An iteration or oracle would need `required` coefficients, above `cap`.
    #[error("required degree {required} exceeds cap {cap}")]
    ResourceLimit { required: BigUint, cap: u64 },

    #[error("prime search exhausted after {candidates} candidates: {detail}")]
    SearchExhausted { candidates: u64, detail: String },

    /// A sequence operation needed an entry (for example a divisor index)
    /// that the supplied sequence does not contain.
    #[error("missing sequence entry for n = {0}")]
    MissingEntry(u64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// CLI exit code: 2 for bad input, 3 for resource exhaustion, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_)
            | Error::Parse(_)
            | Error::Io(_)
            | Error::MissingEntry(_)
            | Error::DivisionByZero => 2,
            Error::ResourceLimit { .. } | Error::SearchExhausted { .. } => 3,
            Error::Internal(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
