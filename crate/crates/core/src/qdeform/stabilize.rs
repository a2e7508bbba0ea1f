use serde_json::{json, Value};

use super::{level_matrix, q_cf_hj_eval, q_cf_regular_eval, QDeformError};
use crate::cf::{CfKind, ContinuedFraction};
use crate::exactalg::{LaurentPoly, TruncatedLaurentSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StabilizationConfig {
    /// Consecutive convergents that must agree.
    pub consecutive: usize,
    /// Deepest convergent examined.
    pub max_depth: usize,
    /// Re-check at twice the depth before accepting.
    pub confirm: bool,
}

impl Default for StabilizationConfig {
    fn default() -> Self {
        StabilizationConfig { consecutive: 3, max_depth: 400, confirm: true }
    }
}

/// The q-deformation of a real number, known through `stabilized_upto`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRealSeries {
    pub series: TruncatedLaurentSeries,
    pub cf: ContinuedFraction,
    pub stabilized_upto: usize,
    /// Convergent index at which the coefficients were accepted.
    pub depth: usize,
}

impl QRealSeries {
    pub fn to_json(&self) -> Value {
        json!({
            "cf": self.cf.to_string(),
            "order": self.stabilized_upto,
            "coeffs": self.series.to_json()["coeffs"],
            "low": self.series.low(),
        })
    }
}

/// Find the first `order` coefficients shared by a sequence of series.
///
/// `nth(n)` returns the expansion of the `n`-th approximant (`n >= 1`), known
/// at least below `q^order`. Returns the stable truncation and the index at
/// which it was accepted.
pub fn stabilize<F>(
    mut nth: F,
    order: usize,
    config: &StabilizationConfig,
) -> Result<(TruncatedLaurentSeries, usize), QDeformError>
where
    F: FnMut(usize) -> Result<TruncatedLaurentSeries, QDeformError>,
{
    let ord = order as i64;
    let not_reached = QDeformError::StabilizationNotReached { max_depth: config.max_depth, order };
    let mut prev: Option<TruncatedLaurentSeries> = None;
    let mut run = 0;
    for n in 1..=config.max_depth {
        let cur = nth(n)?.truncate(ord);
        if cur.order() < ord {
            return Err(not_reached);
        }
        run = match &prev {
            Some(p) if p == &cur => run + 1,
            _ => 1,
        };
        if run >= config.consecutive {
            let deep = (2 * n).min(config.max_depth);
            if !config.confirm || deep <= n || nth(deep)?.truncate(ord) == cur {
                return Ok((cur, n));
            }
        }
        prev = Some(cur);
    }
    Err(not_reached)
}

/// Columns `(N_n, D_n)` of `M_1 ... M_n`, advanced one level at a time.
struct Columns<'a> {
    cf: &'a ContinuedFraction,
    n: usize,
    cur: (LaurentPoly, LaurentPoly),
    second: (LaurentPoly, LaurentPoly),
}

impl<'a> Columns<'a> {
    fn new(cf: &'a ContinuedFraction) -> Self {
        Columns {
            cf,
            n: 0,
            cur: (LaurentPoly::one(), LaurentPoly::zero()),
            second: (LaurentPoly::zero(), LaurentPoly::one()),
        }
    }

    fn advance(&mut self) {
        let pos = self.n + 1;
        let m = level_matrix(self.cf.kind(), pos, self.cf.term(self.n).expect("periodic"));
        let first = (
            &(&self.cur.0 * &m.a) + &self.second.0,
            &(&self.cur.1 * &m.a) + &self.second.1,
        );
        let second = (&self.cur.0 * &m.b, &self.cur.1 * &m.b);
        self.cur = first;
        self.second = second;
        self.n = pos;
    }

    fn at(&mut self, n: usize) -> &(LaurentPoly, LaurentPoly) {
        if n < self.n {
            *self = Columns::new(self.cf);
        }
        while self.n < n {
            self.advance();
        }
        &self.cur
    }
}

fn laurent_quotient(
    num: &LaurentPoly,
    den: &LaurentPoly,
    order: i64,
) -> Result<TruncatedLaurentSeries, QDeformError> {
    let shift = num.low() - den.low();
    let s = TruncatedLaurentSeries::from_quotient(num.core(), den.core(), order - shift)?;
    Ok(s.shift(shift))
}

/// `[x]_q` through `q^(order-1)` for the number `x` with expansion `cf`.
///
/// Periodic expansions go through the stabilization engine; finite ones are
/// expanded exactly.
pub fn q_real_series(
    cf: &ContinuedFraction,
    order: usize,
    config: &StabilizationConfig,
) -> Result<QRealSeries, QDeformError> {
    if cf.is_finite() {
        let x = match cf.kind() {
            CfKind::Regular => q_cf_regular_eval(cf)?,
            CfKind::HJ => q_cf_hj_eval(cf)?,
        };
        return Ok(QRealSeries {
            series: x.value.taylor_expand(order as i64)?,
            cf: cf.clone(),
            stabilized_upto: order,
            depth: cf.len().expect("finite"),
        });
    }
    let mut cols = Columns::new(cf);
    let (series, depth) = stabilize(
        |n| {
            let (num, den) = cols.at(n).clone();
            laurent_quotient(&num, &den, order as i64)
        },
        order,
        config,
    )?;
    Ok(QRealSeries { series, cf: cf.clone(), stabilized_upto: order, depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdeform::q_rational_recursive;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn golden_ratio_series() {
        let s = q_real_series(&cf("[1;(1)]"), 11, &StabilizationConfig::default()).unwrap();
        let expect = TruncatedLaurentSeries::from_i64s(0, &[1, 0, 1, -1, 2, -4, 8, -17, 37, -82, 185]);
        assert_eq!(s.series, expect);
    }

    #[test]
    fn silver_ratio_series() {
        let s = q_real_series(&cf("[2;(2)]"), 12, &StabilizationConfig::default()).unwrap();
        let expect = TruncatedLaurentSeries::from_i64s(0, &[1, 1, 0, 0, 1, 0, -2, 1, 4, -5, -7, 18]);
        assert_eq!(s.series, expect);
    }

    #[test]
    fn hj_and_regular_inputs_agree() {
        let cfg = StabilizationConfig::default();
        let a = q_real_series(&cf("[1;(1,2)]"), 25, &cfg).unwrap();
        let b = q_real_series(&cf("[[2;(4)]]"), 25, &cfg).unwrap();
        assert_eq!(a.series, b.series);
    }

    #[test]
    fn rational_limit_does_not_stabilize() {
        // [1,2,n] and [1,1,1,n] both tend to 3/2, from opposite sides.
        let approximant = |n: usize| {
            let k = (n / 2 + 1) as i64;
            let (r, s) = if n % 2 == 0 { (3 * k + 1, 2 * k + 1) } else { (3 * k + 2, 2 * k + 1) };
            Ok(q_rational_recursive(r, s)?.value.taylor_expand(8)?)
        };
        let cfg = StabilizationConfig { max_depth: 60, ..Default::default() };
        assert_eq!(
            stabilize(approximant, 8, &cfg),
            Err(QDeformError::StabilizationNotReached { max_depth: 60, order: 8 })
        );
    }

    #[test]
    fn finite_input_is_exact() {
        let s = q_real_series(&cf("[1,1,1,1]"), 5, &StabilizationConfig::default()).unwrap();
        assert_eq!(s.series, TruncatedLaurentSeries::from_i64s(0, &[1, 0, 1, 0, -1]));
    }
}
