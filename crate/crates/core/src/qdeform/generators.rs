use num_bigint::BigInt;

use super::{QDeformError, QRational};
use crate::cf::hj_terms_signed;
use crate::exactalg::{LaurentPoly, QMatrix, RationalFunction, TruncatedLaurentSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `x -> x + 1`, deformed to `x -> q x + 1`.
    T,
    /// `x -> x - 1`, deformed to `x -> (x - 1) / q`.
    TInv,
    /// `x -> -1/x`, deformed to `x -> -1 / (q x)`.
    S,
}

impl Generator {
    pub fn matrix(self) -> QMatrix {
        let m = |k: i64| LaurentPoly::monomial(1, k);
        match self {
            Generator::T => QMatrix::new(m(1), m(0), LaurentPoly::zero(), m(0)),
            Generator::TInv => QMatrix::new(m(-1), LaurentPoly::monomial(-1, -1), LaurentPoly::zero(), m(0)),
            Generator::S => QMatrix::new(LaurentPoly::zero(), LaurentPoly::monomial(-1, 0), m(1), LaurentPoly::zero()),
        }
    }

    /// The classical action on `r/s`, returned unreduced.
    fn classical(self, r: &BigInt, s: &BigInt) -> (BigInt, BigInt) {
        match self {
            Generator::T => (r + s, s.clone()),
            Generator::TInv => (r - s, s.clone()),
            Generator::S => (-s, r.clone()),
        }
    }
}

/// `(T_q, S_q) = ([[q, 1], [0, 1]], [[0, -1], [q, 0]])`.
pub fn q_generators() -> (QMatrix, QMatrix) {
    (Generator::T.matrix(), Generator::S.matrix())
}

/// Values the q-deformed modular group acts on.
pub trait QAction: Sized {
    fn act(&self, g: Generator) -> Result<Self, QDeformError>;
}

impl QAction for RationalFunction {
    fn act(&self, g: Generator) -> Result<Self, QDeformError> {
        if g == Generator::S && self.is_zero() {
            return Err(QDeformError::ZeroInverse);
        }
        Ok(g.matrix().apply_rational(self)?)
    }
}

impl QAction for TruncatedLaurentSeries {
    fn act(&self, g: Generator) -> Result<Self, QDeformError> {
        Ok(g.matrix().apply_series(self)?)
    }
}

impl QAction for QRational {
    fn act(&self, g: Generator) -> Result<Self, QDeformError> {
        let value = self.value.act(g)?;
        let (r, s) = g.classical(&self.r, &self.s);
        Ok(QRational::new(value, r, s))
    }
}

/// Apply `g1 g2 ... gn` to `x`, i.e. `gn` acts first.
pub fn apply_word<X: QAction + Clone>(word: &[Generator], x: &X) -> Result<X, QDeformError> {
    word.iter().rev().try_fold(x.clone(), |acc, &g| acc.act(g))
}

/// The word `T^c1 S T^c2 S ... S T^ck` with `r/s = c1 - 1/(c2 - ...)`, so that
/// `r/s` is its image of 0.
pub fn word_for(r: impl Into<BigInt>, s: impl Into<BigInt>) -> Result<Vec<Generator>, QDeformError> {
    let terms = hj_terms_signed(r, s)?;
    let mut word = Vec::new();
    for (i, &c) in terms.iter().enumerate() {
        if i > 0 {
            word.push(Generator::S);
        }
        let g = if c >= 0 { Generator::T } else { Generator::TInv };
        word.extend(std::iter::repeat_n(g, c.unsigned_abs() as usize));
    }
    Ok(word)
}
