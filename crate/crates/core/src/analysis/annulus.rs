use rayon::prelude::*;
use serde_json::{json, Value};

use super::{find_roots, AnalysisError, DEFAULT_ROOT_TOL};
use crate::families::{Family, FamilyName, PolyFamily};

#[derive(Debug, Clone, PartialEq)]
pub struct AnnulusReport {
    pub name: FamilyName,
    pub n: usize,
    pub degree: usize,
    pub min_modulus: f64,
    pub max_modulus: f64,
    pub inner_bound: f64,
    pub outer_bound: f64,
    pub pass: bool,
}

impl AnnulusReport {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.name.to_string(),
            "n": self.n,
            "degree": self.degree,
            "min_modulus": self.min_modulus,
            "max_modulus": self.max_modulus,
            "inner_bound": self.inner_bound,
            "outer_bound": self.outer_bound,
            "pass": self.pass,
        })
    }
}

/// Root moduli of the plain and tilde members `n <= n_max` of `family`
/// against the open annulus `inner < |q| < outer`.
pub fn annulus_check(
    family: Family,
    n_max: usize,
    inner: f64,
    outer: f64,
) -> Result<Vec<AnnulusReport>, AnalysisError> {
    let mut jobs = Vec::new();
    for name in [FamilyName::plain(family), FamilyName::tilde(family)] {
        let fam = PolyFamily::get(name);
        for n in 2..=n_max {
            let p = fam.poly(n)?;
            if p.degree().unwrap_or(0) >= 1 {
                jobs.push((name, n, p));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(name, n, p)| {
            let set = find_roots(&p, DEFAULT_ROOT_TOL)?;
            let min_modulus = set.min_modulus().expect("degree >= 1");
            let max_modulus = set.max_modulus().expect("degree >= 1");
            Ok(AnnulusReport {
                name,
                n,
                degree: set.len(),
                min_modulus,
                max_modulus,
                inner_bound: inner,
                outer_bound: outer,
                pass: inner < min_modulus && max_modulus < outer,
            })
        })
        .collect()
}

/// How the smallest root modulus approaches the inner bound.
#[derive(Debug, Clone, PartialEq)]
pub struct TightnessTrend {
    pub name: FamilyName,
    /// `(n, min_modulus - inner_bound)`.
    pub gaps: Vec<(usize, f64)>,
    /// Increases of the gap between consecutive indices of equal parity beyond `noise`.
    pub violations: Vec<usize>,
    pub noise: f64,
}

impl TightnessTrend {
    pub fn monotone(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_gap(&self) -> Option<f64> {
        self.gaps.first().map(|g| g.1)
    }

    pub fn last_gap(&self) -> Option<f64> {
        self.gaps.last().map(|g| g.1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.name.to_string(),
            "gaps": self.gaps.iter().map(|(n, g)| json!([n, g])).collect::<Vec<_>>(),
            "violations": self.violations,
            "monotone": self.monotone(),
        })
    }
}

/// The gap sequence for `name` over `n_from..=n_to`, read off annulus reports.
///
/// Members of odd and even index form two interleaved sequences, each
/// checked for monotone decrease separately.
pub fn tightness_trend(reports: &[AnnulusReport], name: FamilyName, n_from: usize, n_to: usize, noise: f64) -> TightnessTrend {
    let mut gaps: Vec<(usize, f64)> = reports
        .iter()
        .filter(|r| r.name == name && (n_from..=n_to).contains(&r.n))
        .map(|r| (r.n, r.min_modulus - r.inner_bound))
        .collect();
    gaps.sort_by_key(|g| g.0);
    let violations = gaps
        .iter()
        .filter_map(|&(n, g)| {
            let prev = gaps.iter().find(|p| p.0 + 2 == n)?;
            (g > prev.1 + noise).then_some(n)
        })
        .collect();
    TightnessTrend { name, gaps, violations, noise }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::R_STAR;

    #[test]
    fn fibonacci_inside_golden_annulus() {
        let reports = annulus_check(Family::Fibonacci, 20, R_STAR, 1.0 / R_STAR).unwrap();
        assert_eq!(reports.len(), 2 * 18);
        assert!(reports.iter().all(|r| r.pass));
        assert!(reports.iter().all(|r| r.degree == r.n - 2));
    }

    #[test]
    fn mirror_members_have_inverse_roots() {
        let reports = annulus_check(Family::Pell, 12, 0.0, f64::INFINITY).unwrap();
        for n in 2..=12 {
            let get = |name| reports.iter().find(|r| r.name == name && r.n == n).unwrap();
            let (p, t) = (get(FamilyName::Pell), get(FamilyName::PellTilde));
            assert!((p.min_modulus * t.max_modulus - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn parity_split_trend() {
        let reports = annulus_check(Family::Fibonacci, 16, R_STAR, 1.0 / R_STAR).unwrap();
        let t = tightness_trend(&reports, FamilyName::Fibonacci, 4, 16, 1e-12);
        assert_eq!(t.gaps.len(), 13);
        assert!(t.last_gap().unwrap() < t.first_gap().unwrap());
    }
}
