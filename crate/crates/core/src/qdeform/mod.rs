//! q-deformed rationals and reals.

mod functional;
mod generators;
mod stabilize;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cf::{CfError, CfKind, ContinuedFraction};
use crate::exactalg::{ExactAlgError, IntPoly, LaurentPoly, QMatrix, RationalFunction};

pub use functional::{functional_equation, QuadraticEquation};
pub use generators::{apply_word, q_generators, word_for, Generator, QAction};
pub use stabilize::{q_real_series, stabilize, QRealSeries, StabilizationConfig};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QDeformError {
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Alg(#[from] ExactAlgError),
    #[error("coefficients below q^{order} did not stabilize within {max_depth} convergents")]
    StabilizationNotReached { max_depth: usize, order: usize },
    #[error("the fixed-point quadratic degenerates (rational fixed point)")]
    DegenerateQuadratic,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("expected a finite expansion")]
    NotFinite,
    #[error("expected a periodic expansion")]
    NotPeriodic,
}

/// `[r/s]_q` together with the rational `r/s` it deforms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRational {
    pub value: RationalFunction,
    r: BigInt,
    s: BigInt,
}

impl QRational {
    /// Pair a q-deformation with its classical value, normalizing `s > 0`.
    pub fn new(value: RationalFunction, r: impl Into<BigInt>, s: impl Into<BigInt>) -> Self {
        let (mut r, mut s) = (r.into(), s.into());
        let g = r.gcd(&s);
        if !g.is_zero() {
            r /= &g;
            s /= &g;
        }
        if s.is_negative() {
            r = -r;
            s = -s;
        }
        QRational { value, r, s }
    }

    pub fn source(&self) -> (&BigInt, &BigInt) {
        (&self.r, &self.s)
    }

    pub fn classical(&self) -> BigRational {
        BigRational::new(self.r.clone(), self.s.clone())
    }

    pub fn num(&self) -> &IntPoly {
        self.value.num()
    }

    pub fn den(&self) -> &IntPoly {
        self.value.den()
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}/{}]_q = {}", self.r, self.s, self.value)
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)` for `n >= 0`.
pub fn q_int(n: i64) -> LaurentPoly {
    LaurentPoly::from_poly(IntPoly::q_int(n.max(0) as usize))
}

/// `[n]_{q^-1}`.
pub fn q_int_inv(n: i64) -> LaurentPoly {
    LaurentPoly::q_int_inverse(n.max(0) as usize)
}

/// Level matrix `[[t_i, u_i], [1, 0]]` of the q-continued fraction at 1-based
/// position `pos`.
pub(crate) fn level_matrix(kind: CfKind, pos: usize, a: i64) -> QMatrix {
    let (t, u) = match kind {
        CfKind::Regular if pos % 2 == 1 => (q_int(a), LaurentPoly::monomial(1, a)),
        CfKind::Regular => (q_int_inv(a), LaurentPoly::monomial(1, -a)),
        CfKind::HJ => (q_int(a), LaurentPoly::monomial(-1, a - 1)),
    };
    QMatrix::new(t, u, LaurentPoly::one(), LaurentPoly::zero())
}

/// Product of the level matrices for positions `start+1 ..= start+terms.len()`.
pub(crate) fn levels_product(kind: CfKind, start: usize, terms: &[i64]) -> QMatrix {
    terms
        .iter()
        .enumerate()
        .fold(QMatrix::identity(), |m, (i, &a)| m.mul(&level_matrix(kind, start + i + 1, a)))
}

fn eval_levels(cf: &ContinuedFraction) -> Result<QRational, QDeformError> {
    if !cf.is_finite() {
        return Err(QDeformError::NotFinite);
    }
    let m = levels_product(cf.kind(), 0, cf.prefix());
    let (num, den) = m.apply_infinity();
    let value = RationalFunction::from_laurent(&num, &den)?;
    let x = cf.value().expect("finite");
    Ok(QRational::new(value, x.numer().clone(), x.denom().clone()))
}

/// `[a1,...,a2m]_q` by the q-deformed regular continued fraction, with
/// `[a]_q` and numerator `q^a` at odd levels, `[a]_{q^-1}` and `q^-a` at even ones.
pub fn q_cf_regular_eval(cf: &ContinuedFraction) -> Result<QRational, QDeformError> {
    if cf.kind() != CfKind::Regular {
        return Err(CfError::Malformed("expected a regular expansion".into()).into());
    }
    eval_levels(cf)
}

/// `[[c1,...,ck]]_q` by the q-deformed Hirzebruch-Jung continued fraction,
/// with numerators `q^(c-1)`.
pub fn q_cf_hj_eval(cf: &ContinuedFraction) -> Result<QRational, QDeformError> {
    if cf.kind() != CfKind::HJ {
        return Err(CfError::Malformed("expected a Hirzebruch-Jung expansion".into()).into());
    }
    eval_levels(cf)
}

/// `[r/s]_q` from `[0]_q = 0` using only `[x+1]_q = q[x]_q + 1` and
/// `[-1/x]_q = -1/(q[x]_q)`, along the generator word of `r/s`.
pub fn q_rational_recursive(r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<QRational, QDeformError> {
    let (r, s) = (r.into(), s.into());
    let word = word_for(r.clone(), s.clone())?;
    let zero = QRational::new(RationalFunction::zero(), 0, 1);
    let out = apply_word(&word, &zero)?;
    debug_assert_eq!(out.source(), (&r, &s));
    Ok(out)
}

/// `[-x]_q = -[x]_{q^-1} / q`.
pub fn q_negate(x: &QRational) -> QRational {
    let value = x.value.subs_inverse().neg().mul_q_power(-1);
    QRational::new(value, -x.r.clone(), x.s.clone())
}

/// `[1/x]_q = 1 / [x]_{q^-1}`.
pub fn q_invert(x: &QRational) -> Result<QRational, QDeformError> {
    if x.value.is_zero() {
        return Err(QDeformError::ZeroInverse);
    }
    let value = x.value.subs_inverse().inv()?;
    Ok(QRational::new(value, x.s.clone(), x.r.clone()))
}

/// `[r/s]_q` for a positive rational via its regular expansion.
pub fn q_rational(r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<QRational, QDeformError> {
    let (r, s) = (r.into(), s.into());
    if r.is_positive() && s.is_positive() {
        q_cf_regular_eval(&crate::cf::regular_cf_expand(r, s)?)
    } else {
        q_rational_recursive(r, s)
    }
}

/// Parse `r/s` or `n`.
pub fn parse_rational(text: &str) -> Result<(BigInt, BigInt), QDeformError> {
    let bad = || QDeformError::Alg(ExactAlgError::Parse(text.to_string()));
    let t = text.trim();
    let (r, s) = match t.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().map_err(|_| bad())?, b.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (t.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if s.is_zero() {
        return Err(ExactAlgError::ZeroDenominator.into());
    }
    Ok((r, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{hj_cf_expand, regular_cf_expand};

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(IntPoly::from_i64s(num), IntPoly::from_i64s(den)).unwrap()
    }

    #[test]
    fn small_golden_values() {
        assert_eq!(q_rational_recursive(1, 2).unwrap().value, rf(&[0, 1], &[1, 1]));
        assert_eq!(q_rational_recursive(5, 2).unwrap().value, rf(&[1, 2, 1, 1], &[1, 1]));
        assert_eq!(q_rational_recursive(-1, 2).unwrap().value, rf(&[-1], &[0, 1, 1]));
        for n in 0..8 {
            assert_eq!(
                q_rational_recursive(n, 1).unwrap().value,
                RationalFunction::from_poly(IntPoly::q_int(n as usize))
            );
        }
    }

    #[test]
    fn continued_fraction_routes() {
        let five_thirds = rf(&[1, 1, 2, 1], &[1, 1, 1]);
        assert_eq!(q_cf_regular_eval(&"[1,1,1,1]".parse().unwrap()).unwrap().value, five_thirds);
        assert_eq!(q_cf_hj_eval(&"[[2,3]]".parse().unwrap()).unwrap().value, five_thirds);
        assert_eq!(q_cf_regular_eval(&"[2,2]".parse().unwrap()).unwrap().value, rf(&[1, 2, 1, 1], &[1, 1]));
        assert_eq!(
            q_cf_hj_eval(&hj_cf_expand(8, 3).unwrap()).unwrap(),
            q_rational_recursive(8, 3).unwrap()
        );
        for a1 in 0..=5 {
            for a2 in 1..=5 {
                let cf = ContinuedFraction::regular(vec![a1, a2], vec![]).unwrap();
                let x = cf.value().unwrap();
                let rec = q_rational_recursive(x.numer().clone(), x.denom().clone()).unwrap();
                assert_eq!(q_cf_regular_eval(&cf).unwrap(), rec, "[{a1},{a2}]");
            }
        }
    }

    #[test]
    fn negation_and_inversion() {
        let two = q_rational_recursive(2, 1).unwrap();
        assert_eq!(q_invert(&two).unwrap().value, rf(&[0, 1], &[1, 1]));
        let half = q_rational_recursive(1, 2).unwrap();
        let neg = q_negate(&half);
        assert_eq!(neg, q_rational_recursive(-1, 2).unwrap());
        assert_eq!(q_negate(&neg), half);
        assert_eq!(q_invert(&q_invert(&half).unwrap()).unwrap(), half);
        assert_eq!(q_invert(&q_rational_recursive(0, 1).unwrap()), Err(QDeformError::ZeroInverse));
    }

    #[test]
    fn specializes_at_one() {
        for (r, s) in [(7, 5), (13, 8), (29, 12), (1, 3)] {
            let x = q_cf_regular_eval(&regular_cf_expand(r, s).unwrap()).unwrap();
            assert_eq!(x.value.eval_at_one().unwrap(), BigRational::new(r.into(), s.into()));
        }
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational(" 5/2").unwrap(), (BigInt::from(5), BigInt::from(2)));
        assert_eq!(parse_rational("-3").unwrap(), (BigInt::from(-3), BigInt::one()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
