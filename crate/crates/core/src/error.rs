use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    #[error("pole at evaluation point {0}")]
    PoleAtEvaluation(String),

    /// A division that must be exact left a remainder. Signals a bug, never bad input.
    #[error("internal error: non-exact division in {0}")]
    InternalNonExactDivision(String),

    /// Two alphabet points coincide. Positions are 1-based.
    #[error("duplicate point {point} at positions {first} and {second}")]
    DuplicatePoint {
        point: String,
        first: usize,
        second: usize,
    },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("grid exhausted for symbol {symbol}: needed {needed} non-pole samples")]
    GridExhausted { symbol: String, needed: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
