use std::fmt;

use super::{levels_product, QDeformError};
use crate::cf::{CfKind, ContinuedFraction};
use crate::exactalg::{IntPoly, LaurentPoly, TruncatedLaurentSeries};

/// `A X^2 + B X + C = 0` with coprime integer polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticEquation {
    pub a: IntPoly,
    pub b: IntPoly,
    pub c: IntPoly,
}

impl QuadraticEquation {
    pub fn discriminant(&self) -> IntPoly {
        &self.b * &self.b - &(&self.a * &self.c).scale(&4.into())
    }

    /// `A s^2 + B s + C` for a series `s`.
    pub fn residual(&self, s: &TruncatedLaurentSeries) -> TruncatedLaurentSeries {
        let l = |p: &IntPoly| LaurentPoly::from_poly(p.clone());
        s.mul(s).mul_laurent(&l(&self.a)).add(&s.mul_laurent(&l(&self.b))).add_laurent(&l(&self.c))
    }
}

impl fmt::Display for QuadraticEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})X^2 + ({})X + ({}) = 0", self.a, self.b, self.c)
    }
}

/// The quadratic equation satisfied by `[x]_q` for an eventually periodic `x`.
///
/// The period's Moebius map `y -> (a y + b)/(c y + d)` fixes the tail, so
/// `c y^2 + (d - a) y - b = 0`; the prefix map `x = (α y + β)/(γ y + δ)` then
/// transports this to `x`.
pub fn functional_equation(cf: &ContinuedFraction) -> Result<QuadraticEquation, QDeformError> {
    if cf.is_finite() {
        return Err(QDeformError::NotPeriodic);
    }
    let mut period = cf.period().to_vec();
    if cf.kind() == CfKind::Regular && period.len() % 2 == 1 {
        period.extend_from_within(..);
    }
    let pre = levels_product(cf.kind(), 0, cf.prefix());
    let per = levels_product(cf.kind(), cf.prefix().len(), &period);

    let (al, be, ga, de) = (&pre.a, &pre.b, &pre.c, &pre.d);
    let dma = &per.d - &per.a;
    let two = LaurentPoly::constant(2);
    let a = &(&(&per.c * &(de * de)) - &(&dma * &(de * ga))) - &(&per.b * &(ga * ga));
    let b_cross = &(&two * &per.c) * &(de * be);
    let b_mid = &dma * &(&(de * al) + &(be * ga));
    let b = &(&b_mid - &b_cross) + &(&(&two * &per.b) * &(ga * al));
    let c = &(&(&per.c * &(be * be)) - &(&dma * &(be * al))) - &(&per.b * &(al * al));

    if a.is_zero() {
        return Err(QDeformError::DegenerateQuadratic);
    }
    let (_, polys) = LaurentPoly::common_polys(&[&a, &b, &c]);
    let g = polys.iter().fold(IntPoly::zero(), |g, p| IntPoly::gcd(&g, p));
    let mut out: Vec<IntPoly> = polys.iter().map(|p| p.div_exact(&g).expect("gcd divides")).collect();
    if out[0].lowest_coeff().is_some_and(|c| c < &0.into()) {
        out = out.into_iter().map(|p| -p).collect();
    }
    let c = out.pop().expect("three");
    let b = out.pop().expect("three");
    let a = out.pop().expect("three");
    Ok(QuadraticEquation { a, b, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdeform::{q_real_series, StabilizationConfig};

    fn eq(cf: &str) -> QuadraticEquation {
        functional_equation(&cf.parse().unwrap()).unwrap()
    }

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn golden_ratio_equation() {
        let e = eq("[1;(1)]");
        assert_eq!(e, QuadraticEquation { a: p(&[0, 1]), b: p(&[1, -1, -1]), c: p(&[-1]) });
    }

    #[test]
    fn silver_ratio_equation() {
        let e = eq("[2;(2)]");
        assert_eq!(e, QuadraticEquation { a: p(&[0, 1]), b: p(&[1, -2, 0, -1]), c: p(&[-1]) });
    }

    #[test]
    fn series_satisfy_their_equations() {
        let cfg = StabilizationConfig::default();
        for text in ["[1;(1)]", "[2;(2)]", "[1;(2)]", "[1;(1,2)]", "[[2;(4)]]", "[(2,2,1,1)]", "[3,1,4;(1,5)]"] {
            let cf: ContinuedFraction = text.parse().unwrap();
            let e = functional_equation(&cf).unwrap();
            let s = q_real_series(&cf, 20, &cfg).unwrap().series;
            let r = e.residual(&s);
            assert!(r.order() >= 20 - 2, "{text}");
            assert!(r.is_zero_mod_order(), "{text}: {r:?}");
        }
    }

    #[test]
    fn finite_input_rejected() {
        let cf: ContinuedFraction = "[1,1]".parse().unwrap();
        assert_eq!(functional_equation(&cf), Err(QDeformError::NotPeriodic));
    }
}
