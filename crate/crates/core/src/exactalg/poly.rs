//! Dense univariate polynomials in `q` with arbitrary-precision integer coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactAlgError;

/// A polynomial `c0 + c1*q + c2*q^2 + ...` over the integers.
///
/// Index `i` of the coefficient vector holds the coefficient of `q^i`. The
/// highest stored coefficient is always nonzero, so the zero polynomial is
/// the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Result of evaluating a polynomial in floating point together with a
/// rounding-error bound on `|computed - exact|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexEval {
    pub value: Complex64,
    pub error_bound: f64,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The polynomial `q`.
    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The Euler–Gauss q-integer `[n]_q = 1 + q + ... + q^(n-1)`; zero for `n = 0`.
    pub fn q_int(n: usize) -> Self {
        IntPoly { coeffs: vec![BigInt::one(); n] }
    }

    /// Gaussian binomial coefficient `(n choose k)_q`, built from the
    /// q-Pascal rule `(n k) = (n-1 k-1) + q^k (n-1 k)`.
    pub fn gaussian_binomial(n: usize, k: usize) -> Self {
        if k > n {
            return Self::zero();
        }
        let mut row = vec![Self::one()];
        for m in 1..=n {
            let mut next = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let left = if j > 0 { row[j - 1].clone() } else { Self::zero() };
                let right = if j < m { row[j].shift(j) } else { Self::zero() };
                next.push(left + right);
            }
            row = next;
        }
        row.swap_remove(k)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// The lowest-order nonzero coefficient.
    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.valuation().map(|v| &self.coeffs[v])
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Divide by `q^k`; returns `None` when some dropped coefficient is nonzero.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Strip the largest power of `q` dividing the polynomial, returning it with its exponent.
    pub fn split_q_power(&self) -> (usize, Self) {
        match self.valuation() {
            None => (0, Self::zero()),
            Some(v) => (v, IntPoly { coeffs: self.coeffs[v..].to_vec() }),
        }
    }

    /// Reduce modulo `q^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }

    /// The mirror `q^deg p(1/q)`: the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Divide every coefficient by `k`; `None` unless all divisions are exact.
    pub fn div_scalar_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (quo, rem) = c.div_rem(k);
            if !rem.is_zero() {
                return None;
            }
            out.push(quo);
        }
        Some(IntPoly { coeffs: out })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut cont = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            cont = -cont;
        }
        self.div_scalar_exact(&cont).expect("content divides every coefficient")
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Horner evaluation at a complex point with the a-priori error bound
    /// `gamma_{4n} * sum |c_i| |z|^i`, where `unit_roundoff` is the working
    /// precision (`f64::EPSILON / 2` for IEEE doubles).
    pub fn eval_complex(&self, z: Complex64, unit_roundoff: f64) -> ComplexEval {
        let coeffs = self.to_f64_coeffs();
        let value = horner(&coeffs, z);
        let r = z.norm();
        let abs_sum = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
        let n = 4.0 * coeffs.len().max(1) as f64;
        let gamma = n * unit_roundoff / (1.0 - n * unit_roundoff);
        ComplexEval { value, error_bound: gamma * abs_sum }
    }

    /// Exact division in `Z[q]`: `Some(quotient)` iff `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = divisor.leading_coeff()?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quo[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(quo))
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let Some(dd) = divisor.degree() else {
            panic!("pseudo-remainder by the zero polynomial");
        };
        let Some(nd) = self.degree() else {
            return Self::zero();
        };
        if nd < dd {
            return self.clone();
        }
        let lead = divisor.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        for i in (0..=nd - dd).rev() {
            let top = rem[i + dd].clone();
            for c in rem.iter_mut() {
                *c *= lead;
            }
            if !top.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &top * d;
                }
            }
        }
        rem.truncate(dd);
        Self::from_coeffs(rem)
    }

    /// Greatest common divisor in `Z[q]` via the subresultant remainder
    /// sequence. The result carries the gcd of the contents and has a
    /// positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
        if a.is_zero() {
            return b.primitive_part().scale(&b.content());
        }
        if b.is_zero() {
            return a.primitive_part().scale(&a.content());
        }
        let cont = a.content().gcd(&b.content());
        let (mut f, mut g) = if a.degree() >= b.degree() {
            (a.primitive_part(), b.primitive_part())
        } else {
            (b.primitive_part(), a.primitive_part())
        };
        let mut lc_g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = f.degree().unwrap() - g.degree().unwrap();
            let r = f.pseudo_rem(&g);
            if r.is_zero() {
                return g.primitive_part().scale(&cont);
            }
            if r.degree() == Some(0) {
                return IntPoly::constant(cont);
            }
            let divisor = &lc_g * num_traits::pow(h.clone(), delta);
            f = g;
            g = r.div_scalar_exact(&divisor).expect("subresultant division is exact");
            lc_g = f.leading_coeff().unwrap().clone();
            // h <- lc^delta / h^(delta - 1)
            h = if delta == 0 {
                h
            } else {
                let num = num_traits::pow(lc_g.clone(), delta);
                let den = num_traits::pow(h, delta - 1);
                num / den
            };
        }
    }

    /// Yun's square-free decomposition of the primitive part:
    /// returns `(f_i, i)` with `pp(self) = prod f_i^i`, each `f_i` square-free
    /// and pairwise coprime. Constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let mut out = Vec::new();
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = f.derivative();
        let a0 = IntPoly::gcd(&f, &fp).primitive_part();
        // Quotients by a primitive divisor stay in Z[q] (Gauss's lemma); b and
        // d must always be divided by the same factor to keep d = c - b'.
        let mut b = f.div_exact(&a0).expect("gcd divides f");
        let c = fp.div_exact(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = IntPoly::gcd(&b, &d).primitive_part();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides b");
            let c = d.div_exact(&a).expect("gcd divides d");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Product of the odd-multiplicity square-free factors, i.e. the part of
    /// the polynomial whose roots are branch points of its square root.
    pub fn odd_multiplicity_part(&self) -> IntPoly {
        self.squarefree_decomposition()
            .into_iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(IntPoly::one(), |acc, (f, _)| &acc * &f)
    }

    /// Render highest degree first, e.g. `q^2+3q+1`.
    pub fn display_descending(&self) -> String {
        let terms: Vec<(usize, &BigInt)> =
            self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).collect();
        render_terms(&terms, false)
    }

    /// Render as `c0 + c1*q + c2*q^2 + ...` with explicit coefficients.
    pub fn to_coefficient_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            match i {
                0 => out.push_str(&mag.to_string()),
                1 => out.push_str(&format!("{mag}*q")),
                _ => out.push_str(&format!("{mag}*q^{i}")),
            }
        }
        out
    }
}

pub(crate) fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn render_terms(terms: &[(usize, &BigInt)], _ascending: bool) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (i, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        if neg {
            out.push('-');
        } else if idx > 0 {
            out.push('+');
        }
        let mag = c.abs();
        if *i == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push('q');
        if *i > 1 {
            out.push('^');
            out.push_str(&i.to_string());
        }
    }
    out
}

impl fmt::Display for IntPoly {
    /// `{}` renders compactly in ascending order (`1+2q+q^2`);
    /// `{:#}` renders the explicit `c0 + c1*q + ...` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if f.alternate() {
            return f.write_str(&self.to_coefficient_text());
        }
        let terms: Vec<(usize, &BigInt)> =
            self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        f.write_str(&render_terms(&terms, true))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = ExactAlgError;

    /// Accepts both `1+2q+q^2` and `1 + 2*q + 1*q^2`; terms may repeat exponents.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactAlgError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map(|i| i + 1)
                .unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, exp) = match term.find('q') {
                None => (term.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(qpos) => {
                    let head = &term[..qpos];
                    let head = match head.strip_suffix('*') {
                        Some("") => return Err(bad()),
                        Some(h) => h,
                        None => head,
                    };
                    let coef = if head.is_empty() {
                        BigInt::one()
                    } else {
                        head.parse::<BigInt>().map_err(|_| bad())?
                    };
                    let tail = &term[qpos + 1..];
                    let exp = if tail.is_empty() {
                        1
                    } else {
                        tail.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (coef, exp)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += coef * sign;
        }
        Ok(Self::from_coeffs(coeffs))
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPoly {
    /// Degree first, then coefficients from the top. Only used to give
    /// polynomial collections a deterministic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i);
        out.push(match (y, sign) {
            (None, _) => x,
            (Some(y), 1) => x + y,
            (Some(y), _) => x - y,
        });
    }
    out
}

impl Add<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, 1))
    }
}

impl Sub<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, -1))
    }
}

impl Mul<&IntPoly> for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        *self = &*self - rhs;
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}

/// Polynomial multiplication. Kept as a free function for callers that
/// think in operations rather than operators.
pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    a * b
}

/// Floating-point evaluation with rounding bound.
pub fn poly_eval_complex(p: &IntPoly, z: Complex64, unit_roundoff: f64) -> ComplexEval {
    p.eval_complex(z, unit_roundoff)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn product_of_small_polys() {
        assert_eq!(p(&[1, 1]) * p(&[1, 1, 1]), p(&[1, 2, 2, 1]));
        assert_eq!(IntPoly::zero() * p(&[3, 4]), IntPoly::zero());
    }

    #[test]
    fn fibonacci_step_by_hand() {
        // (1+q+q^2)(1+q) - q^2 = 1 + 2q + q^2 + q^3
        let got = p(&[1, 1, 1]) * p(&[1, 1]) - IntPoly::monomial(1, 2);
        assert_eq!(got, p(&[1, 2, 1, 1]));
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).coeffs().len(), 0);
    }

    #[test]
    fn display_and_parse() {
        let f = p(&[1, 2, 1, 1]);
        assert_eq!(f.to_string(), "1+2q+q^2+q^3");
        assert_eq!(p(&[1, -1]).to_string(), "1-q");
        assert_eq!(p(&[0, -3, 0, 1]).to_string(), "-3q+q^3");
        assert_eq!(p(&[1, 3, 1]).display_descending(), "q^2+3q+1");
        assert_eq!(format!("{f:#}"), "1 + 2*q + 1*q^2 + 1*q^3");
        assert_eq!("1+2q+q^2+q^3".parse::<IntPoly>().unwrap(), f);
        assert_eq!("1 + 2*q + 1*q^2 + 1*q^3".parse::<IntPoly>().unwrap(), f);
        assert_eq!("q^2+3q+1".parse::<IntPoly>().unwrap(), p(&[1, 3, 1]));
        assert_eq!("-q - 1".parse::<IntPoly>().unwrap(), p(&[-1, -1]));
        assert!("1+*q".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
    }

    #[test]
    fn gcd_examples() {
        // (1+q)(1+q+q^2) and (1+q)(1-q)
        let a = p(&[1, 2, 2, 1]);
        let b = p(&[1, 0, -1]);
        assert_eq!(IntPoly::gcd(&a, &b), p(&[1, 1]));
        assert_eq!(IntPoly::gcd(&p(&[2, 2]), &p(&[4])), p(&[2]));
        assert_eq!(IntPoly::gcd(&p(&[0, 1, 1]), &p(&[1, 1])), p(&[1, 1]));
        assert_eq!(IntPoly::gcd(&p(&[1, 1]), &p(&[1, 0, 1])), p(&[1]));
        // gcd(q^2 - 1, q^2 + 2q + 1) = q + 1
        assert_eq!(IntPoly::gcd(&p(&[-1, 0, 1]), &p(&[1, 2, 1])), p(&[1, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 2, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(a.div_exact(&p(&[1, -1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
        assert_eq!(p(&[3, 4]).div_exact(&p(&[2])), None);
    }

    #[test]
    fn squarefree_parts() {
        // (1+q)^2 (q^2-q+1)
        let f = &p(&[1, 1]).pow(2) * &p(&[1, -1, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[1, -1, 1]), 1), (p(&[1, 1]), 2)]);
        assert_eq!(f.odd_multiplicity_part(), p(&[1, -1, 1]));
        let g = &p(&[0, 0, 1]) * &p(&[1, 3, 1]);
        assert_eq!(g.odd_multiplicity_part(), p(&[1, 3, 1]));
    }

    #[test]
    fn gaussian_binomial_4_2() {
        assert_eq!(IntPoly::gaussian_binomial(4, 2), p(&[1, 1, 2, 1, 1]));
        assert_eq!(IntPoly::gaussian_binomial(3, 1), IntPoly::q_int(3));
    }

    #[test]
    fn complex_evaluation() {
        let e = p(&[1, 1, 1]).eval_complex(Complex64::new(1.0, 0.0), f64::EPSILON / 2.0);
        assert_eq!(e.value, Complex64::new(3.0, 0.0));
        let r_star = (3.0 - 5f64.sqrt()) / 2.0;
        let e = p(&[1, 3, 1]).eval_complex(Complex64::new(-r_star, 0.0), f64::EPSILON / 2.0);
        assert!(e.value.norm() < 1e-12);
        assert!(e.error_bound < 1e-14);
    }
}
