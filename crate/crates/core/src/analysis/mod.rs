//! Root location and convergence radii.

use thiserror::Error;

use crate::families::FamilyError;
use crate::qdeform::QDeformError;

mod annulus;
mod genthm;
mod radius;
mod roots;
mod rouche;
mod scan;

pub use annulus::{annulus_check, tightness_trend, AnnulusReport, TightnessTrend};
pub use genthm::{genthm_check, genthm_check_with, hj_denominators, EmpiricalReport, GenThmReport, DEFAULT_EMPIRICAL_DEPTH};
pub use radius::{
    radius_exact, radius_numeric, radius_rational, Certificate, CertificateKind, NumericRadius, PoleCandidate, RadiusMethod,
    RadiusReport, R_BRONZE, R_SQRT2, R_STAR,
};
pub use roots::{backward_error, companion_roots, find_roots, Root, RootMethod, RootSet};
pub use rouche::{family_step_margin, rouche_margin, rouche_margin_default, RoucheReport, DEFAULT_SAMPLES};
pub use scan::{conjecture_scan, ScanConfig, ScanReport, ScanSample, SampleStatus};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("root finder did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("denominator vanishes on the sampling circle")]
    DenominatorVanishes,
    #[error("need at least {need} coefficients, have {have}")]
    InsufficientCoefficients { have: usize, need: usize },
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error(transparent)]
    QDeform(#[from] QDeformError),
    #[error(transparent)]
    Family(#[from] FamilyError),
}
