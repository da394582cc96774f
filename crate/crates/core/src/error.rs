use thiserror::Error;

use crate::arith::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),

    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("cannot parse basket from {input:?}: {reason}")]
    ParseBasket { input: String, reason: String },

    #[error("weights must be positive, got ({0}, {1}, {2})")]
    NonPositiveWeight(i64, i64, i64),

    #[error("threshold must be positive, got {0}")]
    NonPositiveThreshold(i64),

    #[error("quotient index must be at least 2, got {0}")]
    IndexTooSmall(i64),

    #[error("{what}: {value} is not coprime to {modulus}")]
    NotCoprime {
        what: &'static str,
        value: i64,
        modulus: i64,
    },

    #[error("basket entry ({r},{v}) is invalid: need r >= 2, 0 < v < r and gcd(v, r) = 1")]
    InvalidEntry { r: i64, v: i64 },

    #[error("basket is infeasible: pair sum at i = 1 is {b1}, must be < 1")]
    InfeasibleBasket { b1: Rational },

    #[error("discrepancy must be at least 2, got {0}")]
    DiscrepancyTooSmall(i64),

    #[error("weights ({0}, {1}) must satisfy 1 <= first <= second")]
    UnorderedPair(i64, i64),

    #[error("target {0} is outside [0, 3]")]
    TargetOutOfRange(i64),

    #[error("truncation bound {got} is below the minimum {min}")]
    BoundTooSmall { got: i64, min: i64 },
}
