use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactAlgError, IntPoly, LaurentPoly, TruncatedLaurentSeries};

/// A reduced quotient `num / den` of integer polynomials.
///
/// Canonical form: `gcd(num, den) = 1` in `Z[q]` and the lowest-order
/// nonzero coefficient of `den` is positive, so equal functions compare equal
/// structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    /// Reduce and normalize `num / den`.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self, ExactAlgError> {
        if den.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = IntPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.lowest_coeff().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RationalFunction { num: p, den: IntPoly::one() }
    }

    /// `num / den` for Laurent numerator and denominator.
    pub fn from_laurent(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self, ExactAlgError> {
        if den.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        let shift = num.low() - den.low();
        let (n, d) = if shift >= 0 {
            (num.core().shift(shift as usize), den.core().clone())
        } else {
            (num.core().clone(), den.core().shift((-shift) as usize))
        };
        Self::new(n, d)
    }

    pub fn from_laurent_poly(l: &LaurentPoly) -> Self {
        Self::from_laurent(l, &LaurentPoly::one()).expect("unit denominator")
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ExactAlgError> {
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, ExactAlgError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Multiply by `q^k`, `k` of either sign.
    pub fn mul_q_power(&self, k: i64) -> Self {
        if k >= 0 {
            Self::new(self.num.shift(k as usize), self.den.clone())
        } else {
            Self::new(self.num.clone(), self.den.shift((-k) as usize))
        }
        .expect("nonzero denominator")
    }

    /// Substitute `q -> 1/q`.
    pub fn subs_inverse(&self) -> Self {
        Self::from_laurent(
            &LaurentPoly::from_poly(self.num.clone()).subs_inverse(),
            &LaurentPoly::from_poly(self.den.clone()).subs_inverse(),
        )
        .expect("nonzero denominator")
    }

    /// Value at `q = 1`, `None` if the denominator vanishes there.
    pub fn eval_at_one(&self) -> Option<BigRational> {
        let one = BigInt::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(self.num.eval(&one), d))
    }

    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x) / d)
    }

    /// Expand at `q = 0` through exponent `order - 1`.
    pub fn taylor_expand(&self, order: i64) -> Result<TruncatedLaurentSeries, ExactAlgError> {
        TruncatedLaurentSeries::from_quotient(&self.num, &self.den, order)
    }
}

impl fmt::Display for RationalFunction {
    /// `num` alone when the denominator is 1, otherwise `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &IntPoly| {
            let s = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

/// Reduce `num / den` to canonical form.
pub fn rational_simplify(num: IntPoly, den: IntPoly) -> Result<RationalFunction, ExactAlgError> {
    RationalFunction::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn cancels_common_factor() {
        let f = rational_simplify(p(&[0, 1, 1]), p(&[1, 1])).unwrap();
        assert_eq!(f.num(), &p(&[0, 1]));
        assert_eq!(f.den(), &p(&[1]));
    }

    #[test]
    fn half_is_already_reduced() {
        let f = rational_simplify(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(f.to_string(), "q/(1+q)");
    }

    #[test]
    fn integer_content_kept_in_denominator() {
        let f = rational_simplify(p(&[2, 2]), p(&[4])).unwrap();
        assert_eq!(f.num(), &p(&[1, 1]));
        assert_eq!(f.den(), &p(&[2]));
        // Same function as the input at a few rational points.
        for (a, b) in [(1, 3), (-2, 5), (7, 2)] {
            let x = BigRational::new(a.into(), b.into());
            let orig = p(&[2, 2]).eval_rational(&x) / p(&[4]).eval_rational(&x);
            assert_eq!(f.eval_rational(&x).unwrap(), orig);
        }
    }

    #[test]
    fn sign_normalized_on_lowest_denominator_coefficient() {
        let f = rational_simplify(p(&[1]), p(&[0, -1, -1])).unwrap();
        assert_eq!(f.num(), &p(&[-1]));
        assert_eq!(f.den(), &p(&[0, 1, 1]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            rational_simplify(p(&[1]), IntPoly::zero()),
            Err(ExactAlgError::ZeroDenominator)
        );
    }

    #[test]
    fn inverse_substitution_of_half() {
        // [1/2]_q = q/(1+q); at 1/q it becomes 1/(1+q)
        let f = rational_simplify(p(&[0, 1]), p(&[1, 1])).unwrap();
        assert_eq!(f.subs_inverse(), rational_simplify(p(&[1]), p(&[1, 1])).unwrap());
        assert_eq!(f.subs_inverse().subs_inverse(), f);
    }
}
