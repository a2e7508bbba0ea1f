use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Number, Value};

use super::{ExactAlgError, IntPoly, LaurentPoly};

/// `sum_{e = low}^{order-1} c_e q^e + O(q^order)`.
///
/// Coefficients at exponents `>= order` are unknown rather than zero, and
/// every operation returns the largest order it can vouch for.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedLaurentSeries {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl TruncatedLaurentSeries {
    /// Build from explicit coefficients for `q^low .. q^(low+len-1)`.
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut s = TruncatedLaurentSeries { low, coeffs };
        s.normalize();
        s
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `O(q^order)`.
    pub fn zero(order: i64) -> Self {
        Self::new(order.min(0), vec![BigInt::zero(); (order - order.min(0)) as usize])
    }

    pub fn from_poly(p: &IntPoly, order: i64) -> Self {
        Self::from_laurent(&LaurentPoly::from_poly(p.clone()), order)
    }

    pub fn from_laurent(p: &LaurentPoly, order: i64) -> Self {
        let low = p.low().min(0).min(order);
        let coeffs = (low..order).map(|e| p.coeff(e)).collect();
        Self::new(low, coeffs)
    }

    /// Expand `num / den` at `q = 0`, keeping exponents below `order`.
    pub fn from_quotient(num: &IntPoly, den: &IntPoly, order: i64) -> Result<Self, ExactAlgError> {
        if den.is_zero() {
            return Err(ExactAlgError::ZeroDenominator);
        }
        let (v, unit) = den.split_q_power();
        let v = v as i64;
        // num / unit as a power series, then divided by q^v.
        let need = order + v;
        let mut g: Vec<BigInt> = Vec::with_capacity(need.max(0) as usize);
        let c0 = &unit.coeffs()[0];
        for k in 0..need.max(0) as usize {
            let mut acc = num.coeff(k);
            for j in 1..=k.min(unit.coeffs().len() - 1) {
                acc -= &unit.coeffs()[j] * &g[k - j];
            }
            let (quo, rem) = acc.div_rem(c0);
            if !rem.is_zero() {
                return Err(ExactAlgError::NonIntegralCoefficient { exponent: k as i64 - v });
            }
            g.push(quo);
        }
        let low = (-v).min(order);
        let mut coeffs = Vec::with_capacity((order - low).max(0) as usize);
        for e in low..order {
            let idx = e + v;
            coeffs.push(if idx >= 0 { g[idx as usize].clone() } else { BigInt::zero() });
        }
        Ok(Self::new(low, coeffs))
    }

    /// Keep `low = min(valuation, 0)`: pad up to `q^0`, drop known zeros below it.
    fn normalize(&mut self) {
        if self.low > 0 {
            let mut c = vec![BigInt::zero(); self.low as usize];
            c.append(&mut self.coeffs);
            self.coeffs = c;
            self.low = 0;
        }
        let drop = self
            .coeffs
            .iter()
            .take((-self.low).max(0) as usize)
            .take_while(|c| c.is_zero())
            .count();
        if drop > 0 {
            self.coeffs.drain(..drop);
            self.low += drop as i64;
        }
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// First unknown exponent.
    pub fn order(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^e`, `None` if it lies beyond the truncation order.
    pub fn coeff(&self, e: i64) -> Option<BigInt> {
        if e >= self.order() {
            None
        } else if e < self.low {
            Some(BigInt::zero())
        } else {
            Some(self.coeffs[(e - self.low) as usize].clone())
        }
    }

    /// Smallest exponent with a known nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.low + i as i64)
    }

    /// All known coefficients vanish.
    pub fn is_zero_mod_order(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Drop information at exponents `>= order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        let low = self.low.min(order);
        let coeffs = (low..order).map(|e| self.coeff(e).expect("below order")).collect();
        Self::new(low, coeffs)
    }

    /// Agreement of all coefficients below `order` (which must be known on both sides).
    pub fn agrees_with(&self, other: &Self, order: i64) -> bool {
        if self.order() < order || other.order() < order {
            return false;
        }
        let low = self.low.min(other.low);
        (low..order).all(|e| self.coeff(e) == other.coeff(e))
    }

    /// Known part as a Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::new(self.low, IntPoly::from_coeffs(self.coeffs.clone()))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.low + k, self.coeffs.clone())
    }

    pub fn neg(&self) -> Self {
        TruncatedLaurentSeries { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let low = self.low.min(rhs.low).min(order);
        let coeffs = (low..order)
            .map(|e| self.coeff(e).expect("known") + rhs.coeff(e).expect("known"))
            .collect();
        Self::new(low, coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn add_laurent(&self, p: &LaurentPoly) -> Self {
        self.add(&Self::from_laurent(p, self.order()))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = (self.low + rhs.order()).min(rhs.low + self.order());
        let low = self.low + rhs.low;
        if order <= low {
            return Self::zero(order);
        }
        let n = (order - low) as usize;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(low, out)
    }

    /// Product with an exact Laurent polynomial; the order shifts by its low exponent.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        let mut acc = Self::zero(self.order() + p.low());
        for (i, c) in p.core().coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.scale(c).shift(p.low() + i as i64));
            }
        }
        acc
    }

    /// `1 / self`, requiring a unit leading coefficient.
    pub fn inverse(&self) -> Result<Self, ExactAlgError> {
        let v = self.valuation().ok_or(ExactAlgError::UnknownLeadingTerm { order: self.order() })?;
        let lead = self.coeff(v).expect("known");
        if !(lead.is_one() || (-&lead).is_one()) {
            return Err(ExactAlgError::NonIntegralCoefficient { exponent: -v });
        }
        let u: Vec<BigInt> = self.coeffs[(v - self.low) as usize..].to_vec();
        let n = u.len();
        let mut g: Vec<BigInt> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = if k == 0 { BigInt::one() } else { BigInt::zero() };
            for j in 1..=k {
                acc -= &u[j] * &g[k - j];
            }
            g.push(acc * &lead);
        }
        Ok(Self::new(-v, g))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ExactAlgError> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// `{"low": int, "coeffs": [int...]}` with exact integers.
    pub fn to_json(&self) -> Value {
        json!({ "low": self.low, "coeffs": coeffs_to_json(&self.coeffs) })
    }

    pub fn from_json(v: &Value) -> Result<Self, ExactAlgError> {
        let bad = || ExactAlgError::Parse(v.to_string());
        let low = v.get("low").and_then(Value::as_i64).ok_or_else(bad)?;
        let coeffs = json_to_coeffs(v.get("coeffs").ok_or_else(bad)?)?;
        Ok(Self::new(low, coeffs))
    }

    /// OEIS b-file lines `n a(n)` for the known coefficients, `n` being the exponent.
    pub fn to_bfile(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(s, "{} {}", self.low + i as i64, c).expect("string write");
        }
        s
    }

    /// Display with an explicit `+O(q^order)` tail.
    pub fn display_with_order(&self) -> String {
        let body = self.to_string();
        format!("{body}+O(q^{})", self.order())
    }
}

pub(crate) fn coeffs_to_json(coeffs: &[BigInt]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .map(|c| Value::Number(Number::from_str(&c.to_string()).expect("integer literal")))
            .collect(),
    )
}

pub(crate) fn json_to_coeffs(v: &Value) -> Result<Vec<BigInt>, ExactAlgError> {
    let arr = v.as_array().ok_or_else(|| ExactAlgError::Parse(v.to_string()))?;
    arr.iter()
        .map(|x| match x {
            Value::Number(n) => BigInt::from_str(&n.to_string()).map_err(|_| ExactAlgError::Parse(n.to_string())),
            other => Err(ExactAlgError::Parse(other.to_string())),
        })
        .collect()
}

impl IntPoly {
    /// `{"low": 0, "coeffs": [...]}`.
    pub fn to_json(&self) -> Value {
        json!({ "low": 0, "coeffs": coeffs_to_json(self.coeffs()) })
    }

    pub fn from_json(v: &Value) -> Result<Self, ExactAlgError> {
        let s = TruncatedLaurentSeries::from_json(v)?;
        if s.low() < 0 && s.valuation().is_some_and(|e| e < 0) {
            return Err(ExactAlgError::Parse(v.to_string()));
        }
        Ok(IntPoly::from_coeffs((0..s.order()).map(|e| s.coeff(e).expect("known")).collect()))
    }
}

impl fmt::Display for TruncatedLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

impl fmt::Debug for TruncatedLaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series({})", self.display_with_order())
    }
}

impl TruncatedLaurentSeries {
    /// Signs of the known coefficients, for quick pattern checks.
    pub fn signs(&self) -> Vec<i8> {
        self.coeffs
            .iter()
            .map(|c| if c.is_positive() { 1 } else if c.is_negative() { -1 } else { 0 })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn geometric_expansion() {
        let s = TruncatedLaurentSeries::from_quotient(&p(&[0, 1]), &p(&[1, 1]), 5).unwrap();
        assert_eq!(s, TruncatedLaurentSeries::from_i64s(0, &[0, 1, -1, 1, -1]));
        assert_eq!(s.order(), 5);
        assert_eq!(s.to_string(), "q-q^2+q^3-q^4");
    }

    #[test]
    fn five_thirds_expansion() {
        // Long division: (1+q+q^2)(1+q^2) = 1+q+2q^2+q^3+q^4.
        let s = TruncatedLaurentSeries::from_quotient(&p(&[1, 1, 2, 1]), &p(&[1, 1, 1]), 5).unwrap();
        assert_eq!(s, TruncatedLaurentSeries::from_i64s(0, &[1, 0, 1, 0, -1]));
    }

    #[test]
    fn laurent_expansion_with_pole() {
        let s = TruncatedLaurentSeries::from_quotient(&p(&[-1]), &p(&[0, 1, 1]), 3).unwrap();
        assert_eq!(s.low(), -1);
        assert_eq!(s, TruncatedLaurentSeries::from_i64s(-1, &[-1, 1, -1, 1]));
        assert_eq!(s.order(), 3);
    }

    #[test]
    fn non_integral_expansion_is_reported() {
        let e = TruncatedLaurentSeries::from_quotient(&p(&[1]), &p(&[2, 1]), 3);
        assert!(matches!(e, Err(ExactAlgError::NonIntegralCoefficient { .. })));
    }

    #[test]
    fn orders_propagate_to_minimum() {
        let a = TruncatedLaurentSeries::from_i64s(0, &[1, 1, 1, 1, 1]);
        let b = TruncatedLaurentSeries::from_i64s(0, &[1, 2, 3]);
        assert_eq!(a.add(&b).order(), 3);
        assert_eq!(a.mul(&b).order(), 3);
        let qb = b.shift(1);
        assert_eq!(qb.order(), 4);
        assert_eq!(a.mul(&qb).order(), 4);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = TruncatedLaurentSeries::from_i64s(0, &[0, 1, 1, 0, 2, 0, 0]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.low(), -1);
        let prod = a.mul(&inv);
        assert_eq!(prod.coeff(0), Some(BigInt::one()));
        assert!(prod.sub(&TruncatedLaurentSeries::from_poly(&IntPoly::one(), prod.order())).is_zero_mod_order());
    }

    #[test]
    fn json_roundtrip_with_big_integers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = TruncatedLaurentSeries::new(-1, vec![-BigInt::one(), big.clone()]);
        let text = s.to_json().to_string();
        assert_eq!(text, r#"{"coeffs":[-1,123456789012345678901234567890],"low":-1}"#);
        let back = TruncatedLaurentSeries::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn bfile_lines() {
        let s = TruncatedLaurentSeries::from_i64s(0, &[1, 0, 1, -1]);
        assert_eq!(s.to_bfile(), "0 1\n1 0\n2 1\n3 -1\n");
    }
}
