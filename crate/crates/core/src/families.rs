//! The q-deformed Fibonacci and Pell polynomials.
//!
//! `F_n`, `P_n` are the denominators and `~F_{n+1}`, `~P_{n+1}` the numerators of
//! the q-deformed quotients of consecutive Fibonacci and Pell numbers.

use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactalg::{IntPoly, LaurentPoly, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{name} polynomial {n} has negative powers of q")]
    NotPolynomial { name: FamilyName, n: usize },
    #[error("index must be at least {min}, got {n}")]
    IndexTooSmall { n: usize, min: usize },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Fibonacci,
    Pell,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyName {
    Fibonacci,
    FibonacciTilde,
    Pell,
    PellTilde,
}

impl FamilyName {
    pub const ALL: [FamilyName; 4] =
        [FamilyName::Fibonacci, FamilyName::FibonacciTilde, FamilyName::Pell, FamilyName::PellTilde];

    pub fn family(self) -> Family {
        match self {
            FamilyName::Fibonacci | FamilyName::FibonacciTilde => Family::Fibonacci,
            FamilyName::Pell | FamilyName::PellTilde => Family::Pell,
        }
    }

    pub fn is_tilde(self) -> bool {
        matches!(self, FamilyName::FibonacciTilde | FamilyName::PellTilde)
    }

    pub fn plain(family: Family) -> Self {
        match family {
            Family::Fibonacci => FamilyName::Fibonacci,
            Family::Pell => FamilyName::Pell,
        }
    }

    pub fn tilde(family: Family) -> Self {
        match family {
            Family::Fibonacci => FamilyName::FibonacciTilde,
            Family::Pell => FamilyName::PellTilde,
        }
    }

    /// Degree of the `n`-th member, `n >= 2`.
    pub fn degree(self, n: usize) -> usize {
        match self.family() {
            Family::Fibonacci => n - 2,
            Family::Pell => 2 * n - 3,
        }
    }

    /// First index whose member is a polynomial (with the zero member at 0).
    pub fn first_row(self) -> usize {
        match self {
            FamilyName::Fibonacci => 2,
            FamilyName::FibonacciTilde => 2,
            FamilyName::Pell => 1,
            FamilyName::PellTilde => 2,
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::Fibonacci => "fib",
            FamilyName::FibonacciTilde => "fib~",
            FamilyName::Pell => "pell",
            FamilyName::PellTilde => "pell~",
        })
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "fib" | "fibonacci" => Ok(FamilyName::Fibonacci),
            "fib~" | "fibtilde" | "fibonacci-tilde" => Ok(FamilyName::FibonacciTilde),
            "pell" => Ok(FamilyName::Pell),
            "pell~" | "pelltilde" | "pell-tilde" => Ok(FamilyName::PellTilde),
            _ => Err(FamilyError::UnknownFamily(s.to_string())),
        }
    }
}

impl FromStr for Family {
    type Err = FamilyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let name: FamilyName = s.parse()?;
        if name.is_tilde() {
            return Err(FamilyError::UnknownFamily(s.to_string()));
        }
        Ok(name.family())
    }
}

/// Members of one family, computed by the two-step recurrence
/// `X_{n+2} = D(q) X_n - q^k X_{n-2}` and cached append-only.
pub struct PolyFamily {
    name: FamilyName,
    dominant: LaurentPoly,
    tail: LaurentPoly,
    cache: RwLock<Vec<LaurentPoly>>,
}

fn lp(c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_poly(IntPoly::from_i64s(c))
}

impl PolyFamily {
    pub fn new(name: FamilyName) -> Self {
        let q_inv = LaurentPoly::monomial(1, -1);
        let (dominant, tail, seeds) = match name {
            FamilyName::Fibonacci => (lp(&[1, 1, 1]), 2, vec![lp(&[]), lp(&[1]), lp(&[1]), lp(&[1, 1])]),
            FamilyName::FibonacciTilde => (lp(&[1, 1, 1]), 2, vec![lp(&[]), q_inv, lp(&[1]), lp(&[1, 1])]),
            FamilyName::Pell => {
                (gauss_4_2(), 4, vec![lp(&[]), lp(&[1]), lp(&[1, 1]), lp(&[1, 1, 2, 1])])
            }
            FamilyName::PellTilde => (gauss_4_2(), 4, vec![lp(&[]), q_inv, lp(&[1, 1]), lp(&[1, 2, 1, 1])]),
        };
        PolyFamily { name, dominant, tail: LaurentPoly::monomial(1, tail), cache: RwLock::new(seeds) }
    }

    /// Shared instance per family.
    pub fn get(name: FamilyName) -> &'static PolyFamily {
        static CELLS: [OnceLock<PolyFamily>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let i = FamilyName::ALL.iter().position(|&f| f == name).expect("listed");
        CELLS[i].get_or_init(|| PolyFamily::new(name))
    }

    pub fn name(&self) -> FamilyName {
        self.name
    }

    /// The dominant factor `D(q)` of the recurrence.
    pub fn dominant(&self) -> &LaurentPoly {
        &self.dominant
    }

    /// The `q`-power in the recurrence's second term.
    pub fn tail_power(&self) -> i64 {
        self.tail.low()
    }

    /// The `n`-th member as a Laurent polynomial.
    pub fn laurent(&self, n: usize) -> LaurentPoly {
        if let Some(p) = self.cache.read().expect("cache lock").get(n) {
            return p.clone();
        }
        let mut cache = self.cache.write().expect("cache lock");
        while cache.len() <= n {
            let k = cache.len();
            let next = &(&self.dominant * &cache[k - 2]) - &(&self.tail * &cache[k - 4]);
            cache.push(next);
        }
        cache[n].clone()
    }

    pub fn poly(&self, n: usize) -> Result<IntPoly, FamilyError> {
        self.laurent(n).to_poly().ok_or(FamilyError::NotPolynomial { name: self.name, n })
    }
}

fn gauss_4_2() -> LaurentPoly {
    LaurentPoly::from_poly(IntPoly::gaussian_binomial(4, 2))
}

/// `F_n(q)`.
pub fn fibonacci_poly(n: usize) -> IntPoly {
    PolyFamily::get(FamilyName::Fibonacci).poly(n).expect("always a polynomial")
}

/// `~F_n(q)`; `~F_1 = 1/q` is not a polynomial.
pub fn fibonacci_tilde_poly(n: usize) -> Result<IntPoly, FamilyError> {
    PolyFamily::get(FamilyName::FibonacciTilde).poly(n)
}

/// `P_n(q)`.
pub fn pell_poly(n: usize) -> IntPoly {
    PolyFamily::get(FamilyName::Pell).poly(n).expect("always a polynomial")
}

/// `~P_n(q)`; `~P_1 = 1/q` is not a polynomial.
pub fn pell_tilde_poly(n: usize) -> Result<IntPoly, FamilyError> {
    PolyFamily::get(FamilyName::PellTilde).poly(n)
}

pub fn family_poly(name: FamilyName, n: usize) -> Result<IntPoly, FamilyError> {
    PolyFamily::get(name).poly(n)
}

/// `[X_{n+1}/X_n]_q = ~X_{n+1} / X_n`.
pub fn family_quotient(family: Family, n: usize) -> Result<RationalFunction, FamilyError> {
    if n < 1 {
        return Err(FamilyError::IndexTooSmall { n, min: 1 });
    }
    let num = family_poly(FamilyName::tilde(family), n + 1)?;
    let den = family_poly(FamilyName::plain(family), n)?;
    Ok(RationalFunction::new(num, den).expect("nonzero denominator"))
}

/// Coefficient rows, low degree first. Row `k` (from 1) holds the member with
/// index `first_row + k - 1`: `F_{k+1}`, `~F_{k+1}`, `P_k`, `~P_{k+1}`.
pub fn triangle_rows(name: FamilyName, count: usize) -> Vec<Vec<BigInt>> {
    let fam = PolyFamily::get(name);
    (0..count)
        .map(|k| fam.poly(name.first_row() + k).expect("polynomial rows").into_coeffs())
        .collect()
}

/// OEIS-style flattened list `a(0), a(1), ...` of the rows.
pub fn triangle_flat(rows: &[Vec<BigInt>]) -> String {
    rows.iter().flatten().map(BigInt::to_string).collect::<Vec<_>>().join(", ")
}

/// One comma-separated line per row.
pub fn triangle_csv(rows: &[Vec<BigInt>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>().join(","))
        .map(|line| line + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci_poly(0), IntPoly::zero());
        assert_eq!(fibonacci_poly(2), IntPoly::one());
        assert_eq!(fibonacci_poly(5), p(&[1, 2, 1, 1]));
        assert_eq!(fibonacci_poly(8), p(&[1, 3, 4, 5, 4, 3, 1]));
        assert_eq!(fibonacci_tilde_poly(5).unwrap(), p(&[1, 1, 2, 1]));
        assert!(matches!(fibonacci_tilde_poly(1), Err(FamilyError::NotPolynomial { .. })));
    }

    #[test]
    fn pell_values() {
        assert_eq!(pell_poly(3), p(&[1, 1, 2, 1]));
        assert_eq!(pell_poly(4), p(&[1, 2, 3, 3, 2, 1]));
        assert_eq!(triangle_rows(FamilyName::Pell, 7)[6], p(&[1, 3, 9, 16, 24, 29, 29, 25, 18, 10, 4, 1]).into_coeffs());
    }

    #[test]
    fn quotients() {
        assert_eq!(
            family_quotient(Family::Fibonacci, 5).unwrap(),
            RationalFunction::new(p(&[1, 2, 2, 2, 1]), p(&[1, 2, 1, 1])).unwrap()
        );
        assert_eq!(
            family_quotient(Family::Pell, 3).unwrap(),
            RationalFunction::new(p(&[1, 2, 3, 3, 2, 1]), p(&[1, 1, 2, 1])).unwrap()
        );
        assert_eq!(family_quotient(Family::Fibonacci, 1).unwrap(), RationalFunction::one());
    }

    #[test]
    fn triangles_match_displays() {
        let fib = triangle_rows(FamilyName::Fibonacci, 7);
        assert_eq!(fib[3], p(&[1, 2, 1, 1]).into_coeffs());
        assert_eq!(fib[6], p(&[1, 3, 4, 5, 4, 3, 1]).into_coeffs());
        let tilde = triangle_rows(FamilyName::FibonacciTilde, 6);
        assert_eq!(tilde[5], p(&[1, 2, 3, 3, 3, 1]).into_coeffs());
        assert_eq!(triangle_flat(&fib[..3]), "1, 1, 1, 1, 1, 1");
        assert_eq!(triangle_csv(&fib[..2]), "1\n1,1\n");
    }

    #[test]
    fn names_parse() {
        assert_eq!("pell".parse::<Family>().unwrap(), Family::Pell);
        assert_eq!("fib~".parse::<FamilyName>().unwrap(), FamilyName::FibonacciTilde);
        assert!("lucas".parse::<FamilyName>().is_err());
    }
}
