use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;

/// `q^low * poly(q)` with `poly(0) != 0`, or the zero element.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    poly: IntPoly,
}

impl LaurentPoly {
    pub fn new(low: i64, poly: IntPoly) -> Self {
        let (v, core) = poly.split_q_power();
        if core.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: low + v as i64, poly: core }
    }

    pub fn zero() -> Self {
        LaurentPoly { low: 0, poly: IntPoly::zero() }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_poly(IntPoly::constant(c))
    }

    /// `c * q^k` for any integer `k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::new(k, IntPoly::constant(c))
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self::new(0, p)
    }

    /// `[n]_q` evaluated at `q^-1`, i.e. `1 + q^-1 + ... + q^-(n-1)`.
    pub fn q_int_inverse(n: usize) -> Self {
        Self::new(-(n as i64) + 1, IntPoly::q_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Lowest exponent present (0 for zero).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent present, `None` for zero.
    pub fn high(&self) -> Option<i64> {
        self.poly.degree().map(|d| self.low + d as i64)
    }

    /// The polynomial part `poly` with `self = q^low * poly`.
    pub fn core(&self) -> &IntPoly {
        &self.poly
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        if exp < self.low {
            return BigInt::zero();
        }
        self.poly.coeff((exp - self.low) as usize)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, poly: self.poly.clone() }
    }

    /// Substitute `q -> 1/q`.
    pub fn subs_inverse(&self) -> Self {
        match self.high() {
            None => Self::zero(),
            Some(h) => Self::new(-h, self.poly.reversed()),
        }
    }

    /// Convert to an ordinary polynomial if no negative exponents occur.
    pub fn to_poly(&self) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        (self.low >= 0).then(|| self.poly.shift(self.low as usize))
    }

    /// Is this `c * q^k` for a unit `c = +-1`? Returns `(c, k)`.
    pub fn as_unit_monomial(&self) -> Option<(i8, i64)> {
        if self.poly.degree() != Some(0) {
            return None;
        }
        let c = &self.poly.coeffs()[0];
        if c.is_one() {
            Some((1, self.low))
        } else if (-c).is_one() {
            Some((-1, self.low))
        } else {
            None
        }
    }

    /// Bring a list of Laurent polynomials to a common power of `q`, returning
    /// integer polynomials `p_i` with `self_i = q^shift * p_i`.
    pub fn common_polys(items: &[&LaurentPoly]) -> (i64, Vec<IntPoly>) {
        let shift = items
            .iter()
            .filter(|l| !l.is_zero())
            .map(|l| l.low)
            .min()
            .unwrap_or(0);
        let polys = items
            .iter()
            .map(|l| {
                if l.is_zero() {
                    IntPoly::zero()
                } else {
                    l.poly.shift((l.low - shift) as usize)
                }
            })
            .collect();
        (shift, polys)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let neg = c < &BigInt::zero();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = if neg { -c } else { c.clone() };
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match e {
                1 => f.write_str("q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (shift, p) = LaurentPoly::common_polys(&[self, rhs]);
        LaurentPoly::new(shift, &p[0] + &p[1])
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (shift, p) = LaurentPoly::common_polys(&[self, rhs]);
        LaurentPoly::new(shift, &p[0] - &p[1])
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::new(self.low + rhs.low, &self.poly * &rhs.poly)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, poly: -&self.poly }
    }
}

impl From<IntPoly> for LaurentPoly {
    fn from(p: IntPoly) -> Self {
        LaurentPoly::from_poly(p)
    }
}
