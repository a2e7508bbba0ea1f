//! Exact arithmetic in one formal variable `q`: integer polynomials, Laurent
//! polynomials, reduced rational functions, truncated Laurent series and
//! 2x2 matrices over Laurent polynomials.

mod laurent;
mod matrix;
mod poly;
mod rational;
mod series;

use thiserror::Error;

pub use laurent::LaurentPoly;
pub use matrix::QMatrix;
pub use poly::{poly_eval_complex, poly_mul, ComplexEval, IntPoly};
pub use rational::{rational_simplify, RationalFunction};
pub use series::TruncatedLaurentSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactAlgError {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("series coefficient of q^{exponent} is not an integer")]
    NonIntegralCoefficient { exponent: i64 },
    #[error("no nonzero coefficient known below q^{order}; cannot invert")]
    UnknownLeadingTerm { order: i64 },
}

pub type Result<T, E = ExactAlgError> = std::result::Result<T, E>;
