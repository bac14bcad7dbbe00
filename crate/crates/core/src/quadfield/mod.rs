//! Exact arithmetic in real quadratic fields and exact Beatty-sequence primitives.
//!
//! Nothing here touches floating point: floors come from integer square roots
//! and comparisons from squaring with sign bookkeeping.

mod beatty;
mod number;

pub use beatty::{beatty_membership, solve_unit_combination, BeattyPair, BeattySequence, Trichotomy};
pub use number::{field_arith, FieldOp, FieldValue, QuadraticNumber};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched radicands: sqrt({0}) and sqrt({1})")]
    RadicandMismatch(i128, i128),
    #[error("radicand {0} must be an integer > 1 that is not a perfect square")]
    InvalidRadicand(i128),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is rational, an irrational value is required")]
    Rational(QuadraticNumber),
    #[error("{value} lies outside {range}")]
    OutOfRange { value: QuadraticNumber, range: &'static str },
    #[error("second differences are indexed from 1")]
    ZeroIndex,
    #[error("{alpha} and {beta} do not satisfy 1/alpha + 1/beta = 1 with 1 < alpha < 2")]
    NotComplementary { alpha: Box<QuadraticNumber>, beta: Box<QuadraticNumber> },
    #[error("singular coordinate system: both coefficients are rational")]
    SingularSystem,
}

/// The complementary pair of `alpha` in `(1, 2)`.
pub fn conjugate_beatty(alpha: QuadraticNumber) -> Result<BeattyPair, QuadError> {
    BeattyPair::from_alpha(alpha)
}
