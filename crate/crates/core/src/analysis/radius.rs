use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use super::roots::scaled_f64_coeffs;
use super::{backward_error, find_roots, AnalysisError, DEFAULT_ROOT_TOL};
use crate::cf::ContinuedFraction;
use crate::exactalg::{IntPoly, RationalFunction, TruncatedLaurentSeries};
use crate::qdeform::{functional_equation, q_real_series, StabilizationConfig};

/// `(3 - sqrt 5) / 2`, the radius for the golden ratio.
pub const R_STAR: f64 = 0.3819660112501051;
/// `(1 + sqrt 2 - sqrt(2 sqrt 2 - 1)) / 2`, the radius for the silver ratio.
pub const R_SQRT2: f64 = 0.5310100564595691;
/// `(1 + sqrt 13 - sqrt(2 (sqrt 13 - 1))) / 4`, the radius for `(9 + sqrt 221) / 10 = [(2,2,1,1)]`.
pub const R_BRONZE: f64 = 0.5806918319929525;

/// Coefficients of the series used to pick the branch of the square root.
const BRANCH_SERIES_ORDER: usize = 48;
const MIN_NUMERIC_COEFFS: usize = 16;
const CONTINUATION_STEPS: usize = 4096;
const MAX_FACTOR_CLASSES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusMethod {
    ExactDiscriminant,
    NumericRatio,
    NumericRoot,
    /// Smallest root of the denominator of a rational function.
    DenominatorRoots,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    BranchPoint,
    Pole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// Integer factor having `root` as its root of least modulus.
    pub polynomial: IntPoly,
    pub root: Complex64,
    pub residual: f64,
    pub kind: CertificateKind,
    /// `polynomial` was shown to have no proper integer factor vanishing at `root`.
    pub minimal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleCandidate {
    pub root: Complex64,
    pub removable: bool,
    /// The numerator also nearly vanishes, so the classification is unreliable.
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusReport {
    pub method: RadiusMethod,
    /// Radius of convergence `R`.
    pub value: f64,
    pub certificate: Option<Certificate>,
    pub coefficient_count: usize,
    pub uncertainty: Option<f64>,
    /// Roots of the leading coefficient inside the branch-point disk.
    pub poles: Vec<PoleCandidate>,
    /// Independent estimate of `R` from the series coefficients.
    pub cross_check: Option<f64>,
}

impl RadiusReport {
    pub fn to_json(&self) -> Value {
        let cert = self.certificate.as_ref().map(|c| {
            json!({
                "polynomial": c.polynomial.display_descending(),
                "root": [c.root.re, c.root.im],
                "residual": c.residual,
                "kind": format!("{:?}", c.kind),
                "minimal": c.minimal,
                "degree": c.polynomial.degree(),
            })
        });
        json!({
            "method": format!("{:?}", self.method),
            "value": finite_or_null(self.value),
            "certificate": cert,
            "coefficient_count": self.coefficient_count,
            "uncertainty": self.uncertainty,
            "poles": self.poles.iter().map(|p| json!({
                "root": [p.root.re, p.root.im],
                "removable": p.removable,
                "ambiguous": p.ambiguous,
            })).collect::<Vec<_>>(),
            "cross_check": self.cross_check,
        })
    }
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn eval(c: &[f64], z: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a)
}

fn eval_series(s: &TruncatedLaurentSeries, z: Complex64) -> Complex64 {
    let c: Vec<f64> = s.coeffs().iter().map(|k| k.to_f64().unwrap_or(f64::NAN)).collect();
    eval(&c, z) * z.powi(s.low() as i32)
}

fn divisors(n: &BigInt) -> Vec<i64> {
    match n.abs().to_i64() {
        Some(n) if n <= 1_000_000 => (1..=n).filter(|d| n % d == 0).collect(),
        _ => vec![1],
    }
}

/// The integer factor of the square-free polynomial `p` of smallest degree
/// vanishing at `z0`, found by testing products over conjugation classes of roots.
fn minimal_factor(p: &IntPoly, z0: Complex64) -> Result<(IntPoly, bool), AnalysisError> {
    let p = p.primitive_part();
    let set = find_roots(&p, DEFAULT_ROOT_TOL)?;
    let mut classes: Vec<Vec<f64>> = Vec::new();
    let mut target = None;
    let mut best = f64::INFINITY;
    for z in set.values() {
        let tol = 1e-9 * z.norm().max(1.0);
        let class = if z.im.abs() <= tol {
            vec![-z.re, 1.0]
        } else if z.im > 0.0 {
            vec![z.norm_sqr(), -2.0 * z.re, 1.0]
        } else {
            continue;
        };
        let d = (z - z0).norm().min((z.conj() - z0).norm());
        if d < best {
            best = d;
            target = Some(classes.len());
        }
        classes.push(class);
    }
    let Some(target) = target else { return Ok((p, false)) };
    let others: Vec<usize> = (0..classes.len()).filter(|&i| i != target).collect();
    if others.len() > MAX_FACTOR_CLASSES {
        return Ok((p, false));
    }
    let mut masks: Vec<u32> = (0..1u32 << others.len()).collect();
    let degree = |m: u32| (0..others.len()).filter(|i| m >> i & 1 == 1).map(|i| classes[others[i]].len() - 1).sum::<usize>();
    masks.sort_by_key(|&m| degree(m));
    let lead = divisors(p.leading_coeff().expect("nonzero"));
    for m in masks {
        let mut f = classes[target].clone();
        for (i, &c) in others.iter().enumerate() {
            if m >> i & 1 == 1 {
                f = mul_f64(&f, &classes[c]);
            }
        }
        for &l in &lead {
            let scaled: Vec<f64> = f.iter().map(|c| c * l as f64).collect();
            if scaled.iter().any(|c| (c - c.round()).abs() > 1e-6 * c.abs().max(1.0)) {
                continue;
            }
            let cand = IntPoly::from_coeffs(scaled.iter().map(|c| BigInt::from(c.round() as i64)).collect());
            if p.div_exact(&cand).is_some() {
                return Ok((cand, true));
            }
        }
    }
    Ok((p, true))
}

fn mul_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Nonzero root of `p` nearest `z0`, with its backward error.
fn polish_on(p: &IntPoly, z0: Complex64) -> Result<(Complex64, f64), AnalysisError> {
    let set = find_roots(p, DEFAULT_ROOT_TOL)?;
    let root = set
        .values()
        .into_iter()
        .filter(|z| !z.is_zero())
        .min_by(|a, b| (a - z0).norm().total_cmp(&(b - z0).norm()))
        .expect("nonconstant factor");
    let (_, core) = p.split_q_power();
    Ok((root, backward_error(&scaled_f64_coeffs(&core), root)))
}

fn certify(p: &IntPoly, z0: Complex64, kind: CertificateKind) -> Result<Certificate, AnalysisError> {
    let (mut polynomial, minimal) = minimal_factor(p, z0)?;
    if polynomial.leading_coeff().is_some_and(|c| c.is_negative()) {
        polynomial = -polynomial;
    }
    let (root, residual) = polish_on(&polynomial, z0)?;
    Ok(Certificate { polynomial, root, residual, kind, minimal })
}

/// Continue `v = sqrt(g)` along the segment `from -> to`, starting at `v0`.
fn continue_sqrt(g: impl Fn(Complex64) -> Complex64, from: Complex64, to: Complex64, v0: Complex64) -> Complex64 {
    let mut v = v0;
    for k in 1..=CONTINUATION_STEPS {
        let z = from + (to - from) * (k as f64 / CONTINUATION_STEPS as f64);
        let s = g(z).sqrt();
        v = if (s - v).norm() <= (s + v).norm() { s } else { -s };
    }
    v
}

/// Radius of convergence of `[x]_q` for an eventually periodic `x`, from the
/// quadratic equation it satisfies.
///
/// Branch points are the odd-multiplicity roots of the discriminant. Roots of
/// the leading coefficient inside the branch-point disk are poles unless the
/// branch of the square root selected by the series cancels them; the branch
/// is tracked by analytic continuation from a point near the origin where
/// the series converges.
pub fn radius_exact(cf: &ContinuedFraction) -> Result<RadiusReport, AnalysisError> {
    let eq = functional_equation(cf)?;
    let delta = eq.discriminant();
    let parts = delta.squarefree_decomposition();
    let odd = parts.iter().filter(|(_, m)| m % 2 == 1).fold(IntPoly::one(), |acc, (f, _)| &acc * f);
    let even = parts.iter().fold(IntPoly::one(), |acc, (f, m)| &acc * &f.pow((m / 2) as u32));
    let (_, odd) = odd.split_q_power();

    let branch = if odd.degree().unwrap_or(0) >= 1 {
        find_roots(&odd, DEFAULT_ROOT_TOL)?.min_nonzero()
    } else {
        None
    };
    let r_b = branch.map_or(f64::INFINITY, |z| z.norm());

    let (_, a_core) = eq.a.split_q_power();
    let mut inside: Vec<Complex64> = if a_core.degree().unwrap_or(0) >= 1 {
        find_roots(&a_core, DEFAULT_ROOT_TOL)?.values().into_iter().filter(|z| z.norm() < r_b).collect()
    } else {
        Vec::new()
    };
    inside.sort_by(|a, b| a.norm().total_cmp(&b.norm()));

    let series = q_real_series(cf, BRANCH_SERIES_ORDER, &StabilizationConfig::default())?.series;
    let cross_check = radius_numeric(&series).ok().map(|n| n.root.value);

    let (dc, ec, ac, bc) = (
        delta.to_f64_coeffs(),
        even.to_f64_coeffs(),
        eq.a.to_f64_coeffs(),
        eq.b.to_f64_coeffs(),
    );
    let g = |z: Complex64| {
        let e = eval(&ec, z);
        eval(&dc, z) / (e * e)
    };

    let mut poles = Vec::new();
    let mut pole = None;
    if let Some(nearest) = inside.first() {
        let eps = 0.1 * nearest.norm().min(r_b);
        for &z0 in &inside {
            let start = z0 * (eps / z0.norm());
            let w_start = eval(&ac, start) * eval_series(&series, start) * 2.0 + eval(&bc, start);
            let v_start = w_start / eval(&ec, start);
            let s = g(start).sqrt();
            let v0 = if (s - v_start).norm() <= (s + v_start).norm() { s } else { -s };
            let w = eval(&ec, z0) * continue_sqrt(g, start, z0, v0);
            let b = eval(&bc, z0);
            let scale = w.norm() + b.norm();
            let ambiguous = b.norm() <= 1e-8 * scale.max(1.0);
            let removable = !ambiguous && (w - b).norm() < (w + b).norm();
            poles.push(PoleCandidate { root: z0, removable, ambiguous });
            if !removable {
                pole = Some(z0);
                break;
            }
        }
    }

    let certificate = match (pole, branch) {
        (Some(z0), _) => {
            let sqfree = a_core.squarefree_decomposition().into_iter().fold(IntPoly::one(), |acc, (f, _)| &acc * &f);
            Some(certify(&sqfree, z0, CertificateKind::Pole)?)
        }
        (None, Some(z0)) => Some(certify(&odd, z0, CertificateKind::BranchPoint)?),
        (None, None) => None,
    };
    let value = certificate.as_ref().map_or(f64::INFINITY, |c| c.root.norm());
    Ok(RadiusReport {
        method: RadiusMethod::ExactDiscriminant,
        value,
        certificate,
        coefficient_count: series.coeffs().len(),
        uncertainty: None,
        poles,
        cross_check,
    })
}

/// Radius of convergence of a rational function: its smallest nonzero pole.
pub fn radius_rational(x: &RationalFunction) -> Result<RadiusReport, AnalysisError> {
    let (_, den) = x.den().split_q_power();
    let certificate = if den.degree().unwrap_or(0) >= 1 {
        let z0 = find_roots(&den, DEFAULT_ROOT_TOL)?.min_nonzero().expect("nonconstant");
        Some(certify(&den, z0, CertificateKind::Pole)?)
    } else {
        None
    };
    Ok(RadiusReport {
        method: RadiusMethod::DenominatorRoots,
        value: certificate.as_ref().map_or(f64::INFINITY, |c| c.root.norm()),
        certificate,
        coefficient_count: 0,
        uncertainty: None,
        poles: Vec::new(),
        cross_check: None,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericRadius {
    pub ratio: RadiusReport,
    pub root: RadiusReport,
}

impl NumericRadius {
    pub fn to_json(&self) -> Value {
        json!({ "ratio": self.ratio.to_json(), "root": self.root.to_json() })
    }
}

fn ln_abs(c: &BigInt) -> f64 {
    let bits = c.bits();
    if bits < 1000 {
        c.abs().to_f64().expect("finite").ln()
    } else {
        let shift = bits - 900;
        (c.abs() >> shift).to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Estimates of `R = 1/rho`, `rho = limsup |k_n|^(1/n)`, from series coefficients.
///
/// The ratio estimate is `|k_n / k_(n-1)|` at the deepest available `n`; the
/// root estimate is the largest `|k_n|^(1/n)` over the upper half of the indices.
pub fn radius_numeric(series: &TruncatedLaurentSeries) -> Result<NumericRadius, AnalysisError> {
    let have = series.coeffs().len();
    if have < MIN_NUMERIC_COEFFS {
        return Err(AnalysisError::InsufficientCoefficients { have, need: MIN_NUMERIC_COEFFS });
    }
    let low = series.low();
    let coeff = |n: i64| series.coeff(n).unwrap_or_default();
    let top = series.order() - 1;

    let mut rho_ratio = 0.0;
    for n in (low + 1..=top).rev() {
        let (a, b) = (coeff(n), coeff(n - 1));
        if !a.is_zero() && !b.is_zero() {
            rho_ratio = (ln_abs(&a) - ln_abs(&b)).exp();
            break;
        }
    }
    let rho_root = (top / 2).max(1)..=top;
    let rho_root = rho_root
        .filter(|&n| !coeff(n).is_zero())
        .map(|n| (ln_abs(&coeff(n)) / n as f64).exp())
        .fold(0.0, f64::max);

    let r_ratio = 1.0 / rho_ratio;
    let r_root = 1.0 / rho_root;
    let uncertainty = Some((r_ratio - r_root).abs()).filter(|u| u.is_finite());
    let report = |method, value| RadiusReport {
        method,
        value,
        certificate: None,
        coefficient_count: have,
        uncertainty,
        poles: Vec::new(),
        cross_check: None,
    };
    Ok(NumericRadius { ratio: report(RadiusMethod::NumericRatio, r_ratio), root: report(RadiusMethod::NumericRoot, r_root) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cf(s: &str) -> ContinuedFraction {
        s.parse().unwrap()
    }

    fn cert(r: &RadiusReport) -> String {
        r.certificate.as_ref().unwrap().polynomial.display_descending()
    }

    #[test]
    fn closed_forms_match_constants() {
        assert!(((3.0 - 5f64.sqrt()) / 2.0 - R_STAR).abs() < 1e-16);
        let s2 = 2f64.sqrt();
        assert!(((1.0 + s2 - (2.0 * s2 - 1.0).sqrt()) / 2.0 - R_SQRT2).abs() < 1e-16);
        let s13 = 13f64.sqrt();
        assert!(((1.0 + s13 - (2.0 * (s13 - 1.0)).sqrt()) / 4.0 - R_BRONZE).abs() < 1e-16);
    }

    #[test]
    fn golden_ratio() {
        let r = radius_exact(&cf("[1;(1)]")).unwrap();
        assert!((r.value - R_STAR).abs() < 1e-14);
        assert_eq!(cert(&r), "q^2+3q+1");
        assert!(r.certificate.as_ref().unwrap().minimal);
    }

    #[test]
    fn silver_ratio() {
        let r = radius_exact(&cf("[2;(2)]")).unwrap();
        assert!((r.value - R_SQRT2).abs() < 1e-12);
        assert_eq!(cert(&r), "q^4+q^3+4q^2+q+1");
    }

    #[test]
    fn square_root_of_three() {
        let r = radius_exact(&cf("[1;(1,2)]")).unwrap();
        assert!((r.value - 0.527756).abs() < 1e-6, "{}", r.value);
        assert_eq!(cert(&r), "q^6+2q^5+3q^4+3q^2+2q+1");
        let hj = radius_exact(&cf("[[2;(4)]]")).unwrap();
        assert!((hj.value - r.value).abs() < 1e-12);
    }

    #[test]
    fn bronze_ratio() {
        let r = radius_exact(&cf("[(2,2,1,1)]")).unwrap();
        assert!((r.value - R_BRONZE).abs() < 1e-12, "{}", r.value);
    }

    #[test]
    fn ratio_estimate_for_golden_series() {
        let s = q_real_series(&cf("[1;(1)]"), 21, &StabilizationConfig::default()).unwrap();
        let n = radius_numeric(&s.series).unwrap();
        assert!((1.0 / n.ratio.value - 1032004.0 / 424748.0).abs() < 1e-12);
    }

    #[test]
    fn geometric_series() {
        let s = TruncatedLaurentSeries::from_quotient(&IntPoly::one(), &IntPoly::from_i64s(&[1, -2]), 20).unwrap();
        let n = radius_numeric(&s).unwrap();
        assert_eq!(n.ratio.value, 0.5);
        assert!((n.root.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn too_few_coefficients() {
        let s = TruncatedLaurentSeries::from_i64s(0, &[1; 10]);
        assert_eq!(radius_numeric(&s), Err(AnalysisError::InsufficientCoefficients { have: 10, need: 16 }));
    }
}
