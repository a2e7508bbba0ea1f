//! q-deformed rational and real numbers.
//!
//! Exact arithmetic in `Z[q]`, continued fractions, the q-deformation of
//! rationals and quadratic irrationals, the Fibonacci and Pell polynomial
//! families, and numerical analysis of their roots and convergence radii.

pub mod analysis;
pub mod cf;
pub mod exactalg;
pub mod families;
pub mod qdeform;

pub use exactalg::{IntPoly, LaurentPoly, QMatrix, RationalFunction, TruncatedLaurentSeries};
