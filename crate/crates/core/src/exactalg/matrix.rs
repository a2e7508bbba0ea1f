use std::fmt;

use super::{ExactAlgError, LaurentPoly, RationalFunction, TruncatedLaurentSeries};

/// `[[a, b], [c, d]]` over Laurent polynomials in `q`, acting by
/// `x -> (a x + b) / (c x + d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    pub a: LaurentPoly,
    pub b: LaurentPoly,
    pub c: LaurentPoly,
    pub d: LaurentPoly,
}

impl QMatrix {
    pub fn new(a: LaurentPoly, b: LaurentPoly, c: LaurentPoly, d: LaurentPoly) -> Self {
        QMatrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::scalar(LaurentPoly::one())
    }

    pub fn scalar(s: LaurentPoly) -> Self {
        QMatrix::new(s.clone(), LaurentPoly::zero(), LaurentPoly::zero(), s)
    }

    pub fn mul(&self, m: &QMatrix) -> QMatrix {
        QMatrix {
            a: &(&self.a * &m.a) + &(&self.b * &m.c),
            b: &(&self.a * &m.b) + &(&self.b * &m.d),
            c: &(&self.c * &m.a) + &(&self.d * &m.c),
            d: &(&self.c * &m.b) + &(&self.d * &m.d),
        }
    }

    pub fn pow(&self, n: u32) -> QMatrix {
        (0..n).fold(QMatrix::identity(), |acc, _| acc.mul(self))
    }

    pub fn det(&self) -> LaurentPoly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// `Some(s)` when the matrix equals `s * Id`.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        (self.b.is_zero() && self.c.is_zero() && self.a == self.d).then(|| self.a.clone())
    }

    /// Equal up to a nonzero scalar factor, i.e. the same Moebius map.
    pub fn projectively_eq(&self, m: &QMatrix) -> bool {
        let x = [&self.a, &self.b, &self.c, &self.d];
        let y = [&m.a, &m.b, &m.c, &m.d];
        if x.iter().all(|e| e.is_zero()) || y.iter().all(|e| e.is_zero()) {
            return false;
        }
        (0..4).all(|i| (0..4).all(|j| &(x[i] * y[j]) == &(x[j] * y[i])))
    }

    /// Image of the projective point `(1 : 0)`, i.e. the first column.
    pub fn apply_infinity(&self) -> (LaurentPoly, LaurentPoly) {
        (self.a.clone(), self.c.clone())
    }

    pub fn apply_rational(&self, x: &RationalFunction) -> Result<RationalFunction, ExactAlgError> {
        let num = LaurentPoly::from_poly(x.num().clone());
        let den = LaurentPoly::from_poly(x.den().clone());
        let top = &(&self.a * &num) + &(&self.b * &den);
        let bottom = &(&self.c * &num) + &(&self.d * &den);
        RationalFunction::from_laurent(&top, &bottom)
    }

    pub fn apply_series(
        &self,
        x: &TruncatedLaurentSeries,
    ) -> Result<TruncatedLaurentSeries, ExactAlgError> {
        let top = x.mul_laurent(&self.a).add_laurent(&self.b);
        let bottom = x.mul_laurent(&self.c).add_laurent(&self.d);
        top.div(&bottom)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix{self}")
    }
}
