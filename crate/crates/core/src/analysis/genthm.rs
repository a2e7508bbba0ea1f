use rayon::prelude::*;
use serde_json::{json, Value};

use super::{find_roots, AnalysisError, DEFAULT_ROOT_TOL, R_STAR};
use crate::cf::{regular_to_hj, CfKind, ContinuedFraction};
use crate::exactalg::{IntPoly, LaurentPoly};
use crate::qdeform::q_int;

pub const DEFAULT_EMPIRICAL_DEPTH: usize = 60;

/// Root location of the convergent denominators `S_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalReport {
    pub n_max: usize,
    /// Smallest root modulus over all `S_n` of positive degree.
    pub min_modulus: f64,
    /// Index attaining `min_modulus`.
    pub argmin: usize,
    pub bound: f64,
    /// No `S_n` has a root in `|q| <= bound`.
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenThmReport {
    pub hj: ContinuedFraction,
    /// Every term from index `n` on is at least 4.
    pub guaranteed: bool,
    /// 1-based index from which all terms are at least 4.
    pub n: Option<usize>,
    pub empirical: Result<EmpiricalReport, AnalysisError>,
}

impl GenThmReport {
    pub fn to_json(&self) -> Value {
        let empirical = match &self.empirical {
            Ok(e) => json!({
                "n_max": e.n_max,
                "min_modulus": e.min_modulus,
                "argmin": e.argmin,
                "bound": e.bound,
                "pass": e.pass,
            }),
            Err(e) => json!({ "error": e.to_string() }),
        };
        json!({
            "hj": self.hj.to_string(),
            "guaranteed": self.guaranteed,
            "N": self.n,
            "empirical": empirical,
        })
    }
}

/// Denominators `S_1, ..., S_n_max` of the HJ convergents:
/// `S_(n+1) = [c_(n+1)]_q S_n - q^(c_n - 1) S_(n-1)`, `S_0 = 0`, `S_1 = 1`.
pub fn hj_denominators(hj: &ContinuedFraction, n_max: usize) -> Vec<IntPoly> {
    let terms = hj.terms(n_max);
    let mut prev = LaurentPoly::zero();
    let mut cur = LaurentPoly::one();
    let mut out = Vec::with_capacity(terms.len());
    if !terms.is_empty() {
        out.push(IntPoly::one());
    }
    for w in terms.windows(2) {
        let next = &(&q_int(w[1]) * &cur) - &(&LaurentPoly::monomial(1, w[0] - 1) * &prev);
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.to_poly().expect("HJ terms are at least 1"));
    }
    out
}

fn empirical(hj: &ContinuedFraction, n_max: usize, bound: f64) -> Result<EmpiricalReport, AnalysisError> {
    let dens = hj_denominators(hj, n_max);
    let mins: Vec<(usize, f64)> = dens
        .par_iter()
        .enumerate()
        .filter(|(_, p)| p.degree().unwrap_or(0) >= 1)
        .map(|(i, p)| Ok((i + 1, find_roots(p, DEFAULT_ROOT_TOL)?.min_modulus().expect("degree >= 1"))))
        .collect::<Result<_, AnalysisError>>()?;
    let (argmin, min_modulus) = mins.into_iter().fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
    Ok(EmpiricalReport { n_max, min_modulus, argmin, bound, pass: min_modulus > bound })
}

pub fn genthm_check(cf: &ContinuedFraction) -> Result<GenThmReport, AnalysisError> {
    genthm_check_with(cf, DEFAULT_EMPIRICAL_DEPTH)
}

/// Whether the HJ terms are eventually all at least 4, together with an
/// empirical check that the first `n_max` convergent denominators have no
/// root in the closed disk of radius `R_STAR`.
pub fn genthm_check_with(cf: &ContinuedFraction, n_max: usize) -> Result<GenThmReport, AnalysisError> {
    let hj = match cf.kind() {
        CfKind::HJ => cf.clone(),
        CfKind::Regular => regular_to_hj(cf).map_err(crate::qdeform::QDeformError::from)?,
    };
    let periodic_ok = !hj.is_finite() && hj.period().iter().all(|&c| c >= 4);
    let n = periodic_ok.then(|| {
        let tail = hj.prefix().iter().rev().take_while(|&&c| c >= 4).count();
        hj.prefix().len() - tail + 1
    });
    Ok(GenThmReport { guaranteed: periodic_ok, n, empirical: empirical(&hj, n_max, R_STAR), hj })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    #[test]
    fn denominators_follow_convergents() {
        // [[2;(3)]] = golden ratio; convergent denominators are Fibonacci numbers.
        let dens = hj_denominators(&cf("[[2;(3)]]"), 8);
        let at_one: Vec<i64> = dens.iter().map(|p| p.eval(&1.into()).try_into().unwrap()).collect();
        assert_eq!(at_one, [1, 3, 8, 21, 55, 144, 377, 987]);
        assert_eq!(dens[1], IntPoly::from_i64s(&[1, 1, 1]));
    }

    #[test]
    fn guarantee_condition() {
        let r = genthm_check_with(&cf("[[2;(4)]]"), 20).unwrap();
        assert!(r.guaranteed);
        assert_eq!(r.n, Some(2));
        assert!(r.empirical.unwrap().pass);

        let f = genthm_check_with(&cf("[[2;(3)]]"), 20).unwrap();
        assert!(!f.guaranteed);
        assert_eq!(f.n, None);
        assert!(f.empirical.unwrap().pass);

        let g = genthm_check_with(&cf("[[(5,7)]]"), 10).unwrap();
        assert!(g.guaranteed);
        assert_eq!(g.n, Some(1));
    }

    #[test]
    fn regular_input_is_converted() {
        let r = genthm_check_with(&cf("[1;(1,2)]"), 10).unwrap();
        assert_eq!(r.hj, cf("[[2;(4)]]"));
        assert!(r.guaranteed);
    }
}
