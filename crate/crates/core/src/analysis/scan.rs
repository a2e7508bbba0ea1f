use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::radius::radius_rational;
use super::{radius_exact, radius_numeric, AnalysisError, RadiusMethod, RadiusReport, R_STAR};
use crate::cf::ContinuedFraction;
use crate::qdeform::{q_cf_regular_eval, q_real_series, StabilizationConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub seed: u64,
    /// Random eventually periodic expansions.
    pub samples: usize,
    /// Random finite expansions.
    pub finite_samples: usize,
    pub max_entry: i64,
    pub max_prefix: usize,
    pub max_period: usize,
    pub finite_len: (usize, usize),
    /// Series order for the numeric fallback.
    pub order: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            seed: 0,
            samples: 1000,
            finite_samples: 0,
            max_entry: 4,
            max_prefix: 3,
            max_period: 6,
            finite_len: (8, 24),
            order: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SampleStatus {
    Ok,
    /// Certified radius below `R_STAR` minus the tolerance.
    Violation,
    /// Only a numeric estimate is available and it falls below `R_STAR`, or a
    /// pole could not be classified.
    Unconfirmed,
    Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSample {
    pub index: usize,
    pub cf: ContinuedFraction,
    pub status: SampleStatus,
    pub radius: Option<f64>,
    pub method: Option<RadiusMethod>,
    pub certificate_degree: Option<usize>,
    pub certificate_minimal: bool,
    pub error: Option<String>,
}

impl ScanSample {
    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "cf": self.cf.to_string(),
            "status": format!("{:?}", self.status),
            "radius": self.radius.filter(|r| r.is_finite()),
            "method": self.method.map(|m| format!("{m:?}")),
            "certificate_degree": self.certificate_degree,
            "certificate_minimal": self.certificate_minimal,
            "error": self.error,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub samples: Vec<ScanSample>,
    pub tolerance: f64,
}

impl ScanReport {
    pub fn count(&self, status: SampleStatus) -> usize {
        self.samples.iter().filter(|s| s.status == status).count()
    }

    pub fn violations(&self) -> Vec<&ScanSample> {
        self.samples.iter().filter(|s| s.status == SampleStatus::Violation).collect()
    }

    /// Sample of least radius among certified ones.
    pub fn min_radius(&self) -> Option<&ScanSample> {
        self.samples
            .iter()
            .filter(|s| s.status != SampleStatus::Failed && s.method != Some(RadiusMethod::NumericRoot))
            .filter(|s| s.radius.is_some())
            .min_by(|a, b| a.radius.unwrap().total_cmp(&b.radius.unwrap()))
    }

    /// Samples whose radius equals `R_STAR` to within `1e-9`.
    pub fn equality_cases(&self) -> Vec<&ScanSample> {
        self.samples
            .iter()
            .filter(|s| s.method != Some(RadiusMethod::NumericRoot))
            .filter(|s| s.radius.is_some_and(|r| (r - R_STAR).abs() < 1e-9))
            .collect()
    }

    /// How often each certificate degree occurs.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for d in self.samples.iter().filter_map(|s| s.certificate_degree) {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    pub fn to_json(&self, with_samples: bool) -> Value {
        let c = &self.config;
        let mut v = json!({
            "seed": c.seed,
            "samples": c.samples,
            "finite_samples": c.finite_samples,
            "max_entry": c.max_entry,
            "max_prefix": c.max_prefix,
            "max_period": c.max_period,
            "tolerance": self.tolerance,
            "ok": self.count(SampleStatus::Ok),
            "violations": self.count(SampleStatus::Violation),
            "unconfirmed": self.count(SampleStatus::Unconfirmed),
            "failed": self.count(SampleStatus::Failed),
            "min_radius": self.min_radius().map(|s| json!({ "cf": s.cf.to_string(), "radius": s.radius })),
            "equality_cases": self.equality_cases().iter().map(|s| s.cf.to_string()).collect::<Vec<_>>(),
            "certificate_degrees": self.degree_histogram().iter().map(|(d, n)| json!([d, n])).collect::<Vec<_>>(),
        });
        if with_samples {
            v["sample_list"] = self.samples.iter().map(ScanSample::to_json).collect();
        }
        v
    }
}

fn random_terms(rng: &mut ChaCha8Rng, len: usize, max_entry: i64, first_zero_ok: bool) -> Vec<i64> {
    (0..len)
        .map(|i| rng.random_range(if i == 0 && first_zero_ok { 0 } else { 1 }..=max_entry))
        .collect()
}

fn sample_cf(config: &ScanConfig, index: usize) -> ContinuedFraction {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(index as u64);
    if index < config.samples {
        let pre = rng.random_range(0..=config.max_prefix);
        let per = rng.random_range(1..=config.max_period);
        let prefix = random_terms(&mut rng, pre, config.max_entry, true);
        let period = random_terms(&mut rng, per, config.max_entry, false);
        ContinuedFraction::regular(prefix, period).expect("valid random terms")
    } else {
        let len = rng.random_range(config.finite_len.0..=config.finite_len.1);
        let terms = random_terms(&mut rng, len, config.max_entry, true);
        ContinuedFraction::regular(terms, Vec::new()).expect("valid random terms")
    }
}

fn classify(report: &RadiusReport, tol: f64) -> SampleStatus {
    let below = report.value < R_STAR - tol;
    if report.poles.iter().any(|p| p.ambiguous) {
        return if below { SampleStatus::Unconfirmed } else { SampleStatus::Ok };
    }
    match (below, report.method) {
        (false, _) => SampleStatus::Ok,
        (true, RadiusMethod::NumericRatio | RadiusMethod::NumericRoot) => SampleStatus::Unconfirmed,
        (true, _) => SampleStatus::Violation,
    }
}

fn evaluate(cf: &ContinuedFraction, order: usize) -> Result<RadiusReport, AnalysisError> {
    if cf.is_finite() {
        return radius_rational(&q_cf_regular_eval(cf)?.value);
    }
    match radius_exact(cf) {
        Ok(r) => Ok(r),
        Err(_) => {
            let s = q_real_series(cf, order, &StabilizationConfig::default())?;
            Ok(radius_numeric(&s.series)?.root)
        }
    }
}

/// Radii of random continued fractions compared with `R_STAR`.
///
/// Sample `i` is drawn from its own ChaCha stream of `seed`, so the report
/// does not depend on the number of worker threads.
pub fn conjecture_scan(config: &ScanConfig) -> ScanReport {
    let tolerance = 1e-6;
    let samples = (0..config.samples + config.finite_samples)
        .into_par_iter()
        .map(|index| {
            let cf = sample_cf(config, index);
            match evaluate(&cf, config.order) {
                Ok(r) => ScanSample {
                    index,
                    status: classify(&r, tolerance),
                    radius: Some(r.value),
                    method: Some(r.method),
                    certificate_degree: r.certificate.as_ref().and_then(|c| c.polynomial.degree()),
                    certificate_minimal: r.certificate.as_ref().is_some_and(|c| c.minimal),
                    error: None,
                    cf,
                },
                Err(e) => ScanSample {
                    index,
                    cf,
                    status: SampleStatus::Failed,
                    radius: None,
                    method: None,
                    certificate_degree: None,
                    certificate_minimal: false,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    ScanReport { config: *config, samples, tolerance }
}
