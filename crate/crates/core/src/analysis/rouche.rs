use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde_json::{json, Value};

use super::roots::eval_dd;
use super::AnalysisError;
use crate::exactalg::IntPoly;
use crate::families::{Family, FamilyName, PolyFamily};

pub const DEFAULT_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct RoucheReport {
    /// `min |dominant| - radius^power |num/den|` over the sample points.
    pub margin: f64,
    /// `margin` minus a Lipschitz bound times the half sample spacing.
    pub safe_margin: f64,
    /// Angle of the sample attaining `margin`.
    pub argmin: f64,
    pub samples: usize,
    pub radius: f64,
}

impl RoucheReport {
    pub fn to_json(&self) -> Value {
        json!({
            "margin": self.margin,
            "safe_margin": self.safe_margin,
            "argmin": self.argmin,
            "samples": self.samples,
            "radius": self.radius,
        })
    }
}

/// `f(z)` and `f'(z)`.
fn eval2(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    c.iter().rev().fold((zero, zero), |(p, dp), &a| (p * z + a, dp * z + p))
}

/// `sum k |c_k| r^k`, a bound for `|d f / d theta|` on `|q| = r`.
fn theta_lipschitz(c: &[f64], r: f64) -> f64 {
    c.iter().enumerate().map(|(k, a)| k as f64 * a.abs() * r.powi(k as i32)).sum()
}

/// Sampled Rouché margin on the circle `|q| = radius`.
///
/// The quotient is evaluated in double-double arithmetic. The smallest sample
/// is refined by golden-section search. The safety term
/// bounds how far the margin can dip between samples: the dominant part uses
/// its coefficient norm, the quotient twice the largest sampled derivative.
pub fn rouche_margin(
    dominant: &IntPoly,
    num: &IntPoly,
    den: &IntPoly,
    power: u32,
    radius: f64,
    samples: usize,
) -> Result<RoucheReport, AnalysisError> {
    let samples = samples.max(1);
    let d = dominant.to_f64_coeffs();
    let rp = radius.powi(power as i32);
    let den_abs: f64 = den.to_f64_coeffs().iter().enumerate().map(|(k, a)| a.abs() * radius.powi(k as i32)).sum();
    let g = |theta: f64| {
        let z = Complex64::from_polar(radius, theta);
        eval2(&d, z).0.norm() - rp * (eval_dd(num, z).0 / eval_dd(den, z).0).norm()
    };
    let mut margin = f64::INFINITY;
    let mut argmin = 0.0;
    let mut vanishes = false;
    let mut quot_lip: f64 = 0.0;
    for k in 0..samples {
        let theta = TAU * k as f64 / samples as f64;
        let z = Complex64::from_polar(radius, theta);
        let (nv, nd) = eval_dd(num, z);
        let (ev, ed) = eval_dd(den, z);
        vanishes |= ev.norm() <= 4.0 * f64::EPSILON * radius * ed.norm() + 1e-28 * den_abs;
        quot_lip = quot_lip.max(radius * ((nd * ev - nv * ed) / (ev * ev)).norm());
        let v = g(theta);
        if v < margin {
            margin = v;
            argmin = theta;
        }
    }
    if vanishes || !den_abs.is_finite() {
        return Err(AnalysisError::DenominatorVanishes);
    }
    let h = TAU / samples as f64;
    let (mut a, mut b) = (argmin - h, argmin + h);
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let (x1, x2) = (b - ratio * (b - a), a + ratio * (b - a));
        if g(x1) < g(x2) {
            b = x2;
        } else {
            a = x1;
        }
    }
    let mid = (a + b) / 2.0;
    if g(mid) < margin {
        margin = g(mid);
        argmin = mid.rem_euclid(TAU);
    }
    let lip = theta_lipschitz(&d, radius) + rp * 2.0 * quot_lip;
    let safe_margin = margin - lip * PI / samples as f64;
    Ok(RoucheReport { margin, safe_margin, argmin, samples, radius })
}

pub fn rouche_margin_default(
    dominant: &IntPoly,
    num: &IntPoly,
    den: &IntPoly,
    power: u32,
    radius: f64,
) -> Result<RoucheReport, AnalysisError> {
    rouche_margin(dominant, num, den, power, radius, DEFAULT_SAMPLES)
}

/// The margin for the recurrence step `X_{n+2} = D X_n - q^k X_{n-2}`:
/// `|D| > radius^k |X_{n-2} / X_n|` on `|q| = radius`.
pub fn family_step_margin(family: Family, n: usize, radius: f64, samples: usize) -> Result<RoucheReport, AnalysisError> {
    let fam = PolyFamily::get(FamilyName::plain(family));
    let dominant = fam.dominant().to_poly().expect("polynomial recurrence");
    let num = if n >= 2 { fam.poly(n - 2)? } else { IntPoly::zero() };
    let den = fam.poly(n)?;
    rouche_margin(&dominant, &num, &den, fam.tail_power() as u32, radius, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{R_SQRT2, R_STAR};

    #[test]
    fn q3_minimum_on_golden_circle_is_interior() {
        let three = IntPoly::from_i64s(&[1, 1, 1]);
        let r = rouche_margin_default(&three, &IntPoly::zero(), &IntPoly::one(), 2, R_STAR).unwrap();
        // |1 + z + z^2|^2 is quadratic in cos(theta) with vertex at -(1 + r^2) / 4r.
        let r2 = R_STAR * R_STAR;
        let exact = 3f64.sqrt() / 2.0 * (1.0 - r2);
        assert!((r.margin - exact).abs() < 1e-12, "{r:?}");
        assert!((r.argmin.cos() + (1.0 + r2) / (4.0 * R_STAR)).abs() < 1e-6);
        assert!(r.margin < 2.0 * R_STAR);
    }

    #[test]
    fn recurrence_steps_have_positive_margin() {
        let f = family_step_margin(Family::Fibonacci, 10, R_STAR, DEFAULT_SAMPLES).unwrap();
        assert!(f.safe_margin > 0.0, "{f:?}");
        let p = family_step_margin(Family::Pell, 10, R_SQRT2, DEFAULT_SAMPLES).unwrap();
        assert!(p.safe_margin > 0.0, "{p:?}");
    }

    #[test]
    fn vanishing_denominator_detected() {
        // 1 + 2q vanishes at q = -1/2, which is sample point 2048 of 4096.
        let den = IntPoly::from_i64s(&[1, 2]);
        let err = rouche_margin_default(&IntPoly::one(), &IntPoly::one(), &den, 1, 0.5);
        assert_eq!(err, Err(AnalysisError::DenominatorVanishes));
    }
}
