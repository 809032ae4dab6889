//! Exact arithmetic in ℚ(i, √d) and polynomials over it.

mod poly;
mod scalar;

pub use poly::{Monomial, Poly};
pub use scalar::{is_valid_radicand, parse_rational, rational_to_string, Scalar, DEFAULT_D};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unknown {0} has no assigned value")]
    MissingUnknown(String),
    #[error("parse error: {0}")]
    Parse(String),
}
