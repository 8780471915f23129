//! Exact arithmetic in the totally ramified coefficient field `Q[u]/(u^e - p)`.
//!
//! Every element carries its field parameters `(p, e)`. Because `X^e - p` is
//! Eisenstein at `p`, the quotient is a field and the `p`-adic valuation
//! extends uniquely, with `v(u) = 1/e`.

mod newton;
mod parse;
mod poly;
mod scalar;

pub use newton::{newton_slopes, SlopeMultiset};
pub use parse::scalar_parse;
pub use poly::Polynomial;
pub use scalar::{rational_valuation, Field, Scalar, Valuation};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("invalid field parameters p={prime}, e={ramification}: {reason}")]
    InvalidField {
        prime: u64,
        ramification: u32,
        reason: &'static str,
    },
    #[error("field mismatch: (p={0}, e={1}) vs (p={2}, e={3})")]
    FieldMismatch(u64, u32, u64, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("syntax error in scalar literal {text:?} at byte {position}: {message}")]
    Syntax {
        text: String,
        position: usize,
        message: String,
    },
}

/// Builds a rational from a numerator and denominator.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
