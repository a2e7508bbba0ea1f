//! Regular and Hirzebruch-Jung continued fractions, finite or eventually
//! periodic.
//!
//! Regular: `a1 + 1/(a2 + 1/(a3 + ...))`, written `[a1,a2,...;(p1,...)]`.
//! Hirzebruch-Jung: `c1 - 1/(c2 - 1/(c3 - ...))`, written `[[c1,...;(p1,...)]]`
//! or `hj:[c1,...;(p1,...)]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("{r} and {s} are not coprime")]
    NotCoprime { r: BigInt, s: BigInt },
    #[error("expected a positive rational, got {r}/{s}")]
    NotPositive { r: BigInt, s: BigInt },
    #[error("malformed expansion: {0}")]
    Malformed(String),
    #[error("requested {requested} convergents of a finite expansion with {available} terms")]
    TruncationBeyondFinite { requested: usize, available: usize },
    #[error("cannot parse continued fraction {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CfKind {
    Regular,
    HJ,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    kind: CfKind,
    prefix: Vec<i64>,
    period: Vec<i64>,
}

impl ContinuedFraction {
    /// Validate and canonicalize. Finite regular expansions are brought to even
    /// length; periodic ones to a primitive period with the shortest prefix.
    pub fn new(kind: CfKind, prefix: Vec<i64>, period: Vec<i64>) -> Result<Self, CfError> {
        let cf = ContinuedFraction { kind, prefix, period };
        cf.validate()?;
        Ok(cf.canonical())
    }

    pub fn regular(prefix: Vec<i64>, period: Vec<i64>) -> Result<Self, CfError> {
        Self::new(CfKind::Regular, prefix, period)
    }

    pub fn hj(prefix: Vec<i64>, period: Vec<i64>) -> Result<Self, CfError> {
        Self::new(CfKind::HJ, prefix, period)
    }

    pub fn kind(&self) -> CfKind {
        self.kind
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of terms of a finite expansion.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty() && self.period.is_empty()
    }

    /// The `i`-th term (0-based) of the unrolled expansion.
    pub fn term(&self, i: usize) -> Option<i64> {
        if i < self.prefix.len() {
            Some(self.prefix[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.prefix.len()) % self.period.len()])
        }
    }

    /// The first `n` terms (fewer for a short finite expansion).
    pub fn terms(&self, n: usize) -> Vec<i64> {
        (0..n).map_while(|i| self.term(i)).collect()
    }

    fn validate(&self) -> Result<(), CfError> {
        let all: Vec<i64> = self.prefix.iter().chain(&self.period).copied().collect();
        if all.is_empty() {
            return Err(CfError::Malformed("empty expansion".into()));
        }
        let (first_min, rest_min) = match self.kind {
            CfKind::Regular => (0, 1),
            CfKind::HJ => (1, 2),
        };
        for (i, &a) in all.iter().enumerate() {
            let min = if i == 0 { first_min } else { rest_min };
            if a < min {
                return Err(CfError::Malformed(format!("term {} = {a} is below {min}", i + 1)));
            }
        }
        if self.kind == CfKind::Regular && all == [0] {
            return Err(CfError::Malformed("[0] is not a positive rational".into()));
        }
        if self.kind == CfKind::HJ && !self.period.is_empty() && self.period.iter().all(|&c| c == 2) {
            return Err(CfError::Malformed("an all-2 period converges to a rational".into()));
        }
        Ok(())
    }

    fn canonical(mut self) -> Self {
        if self.period.is_empty() {
            if self.kind == CfKind::Regular && self.prefix.len() % 2 == 1 {
                let last = self.prefix.pop().expect("nonempty");
                match self.prefix.last_mut() {
                    Some(prev) if last == 1 => *prev += 1,
                    _ => {
                        self.prefix.push(last - 1);
                        self.prefix.push(1);
                    }
                }
            }
            return self;
        }
        let n = self.period.len();
        let p = (1..=n)
            .find(|&p| n % p == 0 && (0..n).all(|i| self.period[i] == self.period[i % p]))
            .expect("n divides itself");
        self.period.truncate(p);
        while self.prefix.last() == self.period.last() && !self.prefix.is_empty() {
            self.prefix.pop();
            self.period.rotate_right(1);
        }
        self
    }

    /// Exact value of a finite expansion.
    pub fn value(&self) -> Option<BigRational> {
        if !self.is_finite() {
            return None;
        }
        let (p, q) = self.convergent_pair(self.prefix.len());
        Some(BigRational::new(p, q))
    }

    /// Floating-point value, via deep convergents for periodic expansions.
    pub fn to_f64(&self) -> f64 {
        let depth = self.len().unwrap_or(self.prefix.len() + 80 * self.period.len().max(1));
        let (p, q) = self.convergent_pair(depth);
        ratio_f64(&p, &q)
    }

    /// Numerator and denominator of the truncation to the first `k` terms.
    fn convergent_pair(&self, k: usize) -> (BigInt, BigInt) {
        let sign: i64 = match self.kind {
            CfKind::Regular => 1,
            CfKind::HJ => -1,
        };
        let (mut p0, mut p1) = (BigInt::one(), BigInt::from(self.term(0).expect("nonempty")));
        let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
        for i in 1..k {
            let a = BigInt::from(self.term(i).expect("within length"));
            let p2 = &a * &p1 + sign * &p0;
            let q2 = &a * &q1 + sign * &q0;
            p0 = std::mem::replace(&mut p1, p2);
            q0 = std::mem::replace(&mut q1, q2);
        }
        (p1, q1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": match self.kind { CfKind::Regular => "regular", CfKind::HJ => "hj" },
            "prefix": self.prefix,
            "period": self.period,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, CfError> {
        let bad = || CfError::Parse(v.to_string());
        let kind = match v.get("kind").and_then(Value::as_str).ok_or_else(bad)? {
            "regular" => CfKind::Regular,
            "hj" => CfKind::HJ,
            _ => return Err(bad()),
        };
        let list = |key: &str| -> Result<Vec<i64>, CfError> {
            match v.get(key) {
                None => Ok(Vec::new()),
                Some(Value::Array(a)) => a.iter().map(|x| x.as_i64().ok_or_else(bad)).collect(),
                Some(_) => Err(bad()),
            }
        };
        Self::new(kind, list("prefix")?, list("period")?)
    }
}

fn ratio_f64(p: &BigInt, q: &BigInt) -> f64 {
    // Scale both to keep the quotient accurate for huge convergents.
    let bits = p.bits().max(q.bits());
    let shift = bits.saturating_sub(900);
    let p = (p >> shift).to_f64().unwrap_or(f64::NAN);
    let q = (q >> shift).to_f64().unwrap_or(f64::NAN);
    p / q
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        let body = if self.period.is_empty() {
            join(&self.prefix)
        } else if self.prefix.is_empty() {
            format!("({})", join(&self.period))
        } else {
            format!("{};({})", join(&self.prefix), join(&self.period))
        };
        match self.kind {
            CfKind::Regular => write!(f, "[{body}]"),
            CfKind::HJ => write!(f, "[[{body}]]"),
        }
    }
}

impl fmt::Debug for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for ContinuedFraction {
    type Err = CfError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CfError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (kind, inner) = if let Some(rest) = t.strip_prefix("hj:") {
            (CfKind::HJ, rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?)
        } else if let Some(rest) = t.strip_prefix("[[") {
            (CfKind::HJ, rest.strip_suffix("]]").ok_or_else(bad)?)
        } else {
            (CfKind::Regular, t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?)
        };
        let nums = |part: &str| -> Result<Vec<i64>, CfError> {
            if part.is_empty() {
                return Ok(Vec::new());
            }
            part.split(',').map(|x| x.parse::<i64>().map_err(|_| bad())).collect()
        };
        let (pre, per) = match inner.find('(') {
            None => (inner, None),
            Some(i) => {
                let head = inner[..i].strip_suffix(';').unwrap_or(&inner[..i]);
                let tail = inner[i + 1..].strip_suffix(')').ok_or_else(bad)?;
                if tail.is_empty() {
                    return Err(bad());
                }
                (head, Some(tail))
            }
        };
        let prefix = nums(pre)?;
        let period = per.map(nums).transpose()?.unwrap_or_default();
        ContinuedFraction::new(kind, prefix, period)
    }
}

fn check_positive_coprime(r: &BigInt, s: &BigInt) -> Result<(), CfError> {
    if !r.is_positive() || !s.is_positive() {
        return Err(CfError::NotPositive { r: r.clone(), s: s.clone() });
    }
    if !r.gcd(s).is_one() {
        return Err(CfError::NotCoprime { r: r.clone(), s: s.clone() });
    }
    Ok(())
}

fn coeff(x: BigInt) -> Result<i64, CfError> {
    x.to_i64().ok_or_else(|| CfError::Malformed(format!("coefficient {x} exceeds 64 bits")))
}

/// Even-length regular expansion of `r/s`.
pub fn regular_cf_expand(r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<ContinuedFraction, CfError> {
    let (mut r, mut s) = (r.into(), s.into());
    check_positive_coprime(&r, &s)?;
    let mut terms = Vec::new();
    while !s.is_zero() {
        let (a, rem) = r.div_mod_floor(&s);
        terms.push(coeff(a)?);
        r = std::mem::replace(&mut s, rem);
    }
    ContinuedFraction::regular(terms, Vec::new())
}

/// Hirzebruch-Jung expansion of a positive rational `r/s`.
pub fn hj_cf_expand(r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<ContinuedFraction, CfError> {
    let (r, s) = (r.into(), s.into());
    check_positive_coprime(&r, &s)?;
    ContinuedFraction::hj(hj_terms(r, s)?, Vec::new())
}

/// Hirzebruch-Jung terms of any rational `r/s` with `s > 0`; the first term
/// may be zero or negative, the others are at least 2.
pub fn hj_terms_signed(r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<Vec<i64>, CfError> {
    let (r, s) = (r.into(), s.into());
    if !s.is_positive() {
        return Err(CfError::NotPositive { r, s });
    }
    if !r.gcd(&s).is_one() {
        return Err(CfError::NotCoprime { r, s });
    }
    hj_terms(r, s)
}

fn hj_terms(mut r: BigInt, mut s: BigInt) -> Result<Vec<i64>, CfError> {
    let mut terms = Vec::new();
    while !s.is_zero() {
        let c = -((-&r).div_floor(&s));
        let next = &c * &s - &r;
        terms.push(coeff(c)?);
        r = std::mem::replace(&mut s, next);
    }
    Ok(terms)
}

/// Hirzebruch-Jung terms for a run of regular terms starting at an odd index;
/// `first` marks the very first term, which gains 1 instead of 2.
fn hj_block(regular: &[i64], first: bool) -> Vec<i64> {
    let mut out = Vec::new();
    for (i, &a) in regular.iter().enumerate() {
        if i % 2 == 0 {
            out.push(if first && i == 0 { a + 1 } else { a + 2 });
        } else {
            out.extend(std::iter::repeat_n(2, (a - 1) as usize));
        }
    }
    out
}

/// Hirzebruch's conversion from a regular to a Hirzebruch-Jung expansion.
pub fn regular_to_hj(cf: &ContinuedFraction) -> Result<ContinuedFraction, CfError> {
    if cf.kind != CfKind::Regular {
        return Err(CfError::Malformed("expected a regular expansion".into()));
    }
    if cf.is_finite() {
        return ContinuedFraction::hj(hj_block(&cf.prefix, true), Vec::new());
    }
    let mut prefix = cf.prefix.clone();
    let mut period = cf.period.clone();
    if period.len() % 2 == 1 {
        period.extend_from_within(..);
    }
    if prefix.len() % 2 == 1 {
        prefix.push(period[0]);
        period.rotate_left(1);
    }
    if prefix.is_empty() {
        prefix.extend_from_slice(&period);
    }
    ContinuedFraction::hj(hj_block(&prefix, true), hj_block(&period, false))
}

/// Regular terms for a run of Hirzebruch-Jung terms. `first` selects the
/// `c1 - 1` rule for the leading term; otherwise the run must start with a term
/// other than 2.
fn regular_block(hj: &[i64], first: bool) -> Result<Vec<i64>, CfError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < hj.len() {
        let c = hj[i];
        if first && i == 0 {
            out.push(c - 1);
        } else if c == 2 {
            return Err(CfError::Malformed("run of 2s without a leading term".into()));
        } else {
            out.push(c - 2);
        }
        i += 1;
        let twos = hj[i..].iter().take_while(|&&x| x == 2).count();
        out.push(twos as i64 + 1);
        i += twos;
    }
    Ok(out)
}

/// Inverse of [`regular_to_hj`].
pub fn hj_to_regular(cf: &ContinuedFraction) -> Result<ContinuedFraction, CfError> {
    if cf.kind != CfKind::HJ {
        return Err(CfError::Malformed("expected a Hirzebruch-Jung expansion".into()));
    }
    if cf.is_finite() {
        return ContinuedFraction::regular(regular_block(&cf.prefix, true)?, Vec::new());
    }
    let mut prefix = cf.prefix.clone();
    let mut period = cf.period.clone();
    if prefix.is_empty() {
        prefix.push(period[0]);
        period.rotate_left(1);
    }
    let mut guard = 0;
    while period[0] == 2 {
        guard += 1;
        if guard > period.len() {
            return Err(CfError::Malformed("an all-2 period converges to a rational".into()));
        }
        prefix.push(2);
        period.rotate_left(1);
    }
    ContinuedFraction::regular(regular_block(&prefix, true)?, regular_block(&period, false)?)
}

/// The first `n` convergents `(r_k, s_k)`, each in lowest terms with `s_k > 0`.
pub fn convergents(cf: &ContinuedFraction, n: usize) -> Result<Vec<(BigInt, BigInt)>, CfError> {
    if let Some(len) = cf.len() {
        if n > len {
            return Err(CfError::TruncationBeyondFinite { requested: n, available: len });
        }
    }
    let sign: i64 = match cf.kind {
        CfKind::Regular => 1,
        CfKind::HJ => -1,
    };
    let mut out = Vec::with_capacity(n);
    let (mut p0, mut p1) = (BigInt::one(), BigInt::from(cf.term(0).expect("nonempty")));
    let (mut q0, mut q1) = (BigInt::zero(), BigInt::one());
    for i in 0..n {
        if i > 0 {
            let a = BigInt::from(cf.term(i).expect("within length"));
            let p2 = &a * &p1 + sign * &p0;
            let q2 = &a * &q1 + sign * &q0;
            p0 = std::mem::replace(&mut p1, p2);
            q0 = std::mem::replace(&mut q1, q2);
        }
        out.push((p1.clone(), q1.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    fn euclid(mut r: i64, mut s: i64) -> Vec<i64> {
        let mut v = Vec::new();
        while s != 0 {
            v.push(r / s);
            (r, s) = (s, r % s);
        }
        v
    }

    #[test]
    fn regular_expansions() {
        assert_eq!(euclid(5, 3), vec![1, 1, 2]);
        assert_eq!(regular_cf_expand(5, 3).unwrap().prefix(), &[1, 1, 1, 1]);
        assert_eq!(regular_cf_expand(5, 2).unwrap().prefix(), &[2, 2]);
        for n in 1..10 {
            assert_eq!(regular_cf_expand(n, 1).unwrap().prefix(), &[n - 1, 1]);
        }
        assert!(matches!(regular_cf_expand(4, 2), Err(CfError::NotCoprime { .. })));
        assert_eq!(
            regular_cf_expand(5, 3).unwrap().value().unwrap(),
            BigRational::new(5.into(), 3.into())
        );
    }

    #[test]
    fn hj_expansions() {
        assert_eq!(hj_cf_expand(5, 3).unwrap().prefix(), &[2, 3]);
        assert_eq!(hj_cf_expand(7, 5).unwrap().prefix(), &[2, 2, 3]);
        assert_eq!(hj_cf_expand(6, 1).unwrap().prefix(), &[6]);
        assert_eq!(hj_terms_signed(-1, 2).unwrap(), vec![0, 2]);
        assert_eq!(hj_terms_signed(-5, 2).unwrap(), vec![-2, 2]);
    }

    #[test]
    fn hirzebruch_formula_finite() {
        let r = cf("[1,1,1,1]");
        assert_eq!(regular_to_hj(&r).unwrap(), hj_cf_expand(5, 3).unwrap());
        assert_eq!(hj_to_regular(&cf("[[2,3]]")).unwrap(), r);
        assert_eq!(hj_to_regular(&cf("[[7]]")).unwrap(), cf("[6,1]"));
    }

    #[test]
    fn hirzebruch_formula_periodic() {
        let sqrt3 = cf("[1;(1,2)]");
        assert_eq!(regular_to_hj(&sqrt3).unwrap(), cf("[[2;(4)]]"));
        assert_eq!(hj_to_regular(&cf("hj:[2;(4)]")).unwrap(), sqrt3);
        let phi = cf("[1;(1)]");
        assert_eq!(regular_to_hj(&phi).unwrap(), cf("[[2;(3)]]"));
        let silver = cf("[2;(2)]");
        let h = regular_to_hj(&silver).unwrap();
        assert_eq!(h, cf("[[3;(2,4)]]"));
        assert!((h.to_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(hj_to_regular(&h).unwrap(), silver);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(cf("[1;(1)]"), cf("[1,1,1;(1,1)]"));
        assert_eq!(cf("[1;(1)]").to_string(), "[(1)]");
        assert_eq!(cf("[1;(1,2)]").to_string(), "[1;(1,2)]");
        assert_eq!(cf("[5,2,1]"), cf("[5,3]"));
        assert_eq!(cf("[5,1,1]").prefix(), &[5, 2]);
        assert_eq!(cf("[4]").prefix(), &[3, 1]);
        assert!("[[2;(2)]]".parse::<ContinuedFraction>().is_err());
        assert!("[1,0]".parse::<ContinuedFraction>().is_err());
        assert!("[1;()]".parse::<ContinuedFraction>().is_err());
    }

    #[test]
    fn convergent_lists() {
        let pell = convergents(&cf("[(2)]"), 4).unwrap();
        let expect = [(2, 1), (5, 2), (12, 5), (29, 12)];
        assert_eq!(pell, expect.map(|(a, b)| (BigInt::from(a), BigInt::from(b))).to_vec());
        let fib = convergents(&cf("[(1)]"), 5).unwrap();
        let expect = [(1, 1), (2, 1), (3, 2), (5, 3), (8, 5)];
        assert_eq!(fib, expect.map(|(a, b)| (BigInt::from(a), BigInt::from(b))).to_vec());
        let hj = convergents(&cf("[[(3)]]"), 3).unwrap();
        let expect = [(3, 1), (8, 3), (21, 8)];
        assert_eq!(hj, expect.map(|(a, b)| (BigInt::from(a), BigInt::from(b))).to_vec());
        assert_eq!(
            convergents(&cf("[1,1,1,1]"), 5),
            Err(CfError::TruncationBeyondFinite { requested: 5, available: 4 })
        );
    }

    #[test]
    fn json_roundtrip() {
        let c = cf("[[2;(4)]]");
        assert_eq!(ContinuedFraction::from_json(&c.to_json()).unwrap(), c);
    }
}
