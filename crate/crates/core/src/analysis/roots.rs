use std::f64::consts::TAU;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

use super::AnalysisError;
use crate::exactalg::IntPoly;

const EPS: f64 = f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    Aberth,
    Companion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub z: Complex64,
    /// Relative backward error `|p(z)| / sum |c_i| |z|^i`.
    pub residual: f64,
    /// Multiplicity as a root of the input, from its exact square-free decomposition.
    pub multiplicity: usize,
    /// Another computed root of a different square-free factor lies within
    /// `1e-6` relative distance.
    pub near_multiple: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub method: RootMethod,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.z).collect()
    }

    pub fn moduli(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.z.norm()).collect()
    }

    pub fn min_modulus(&self) -> Option<f64> {
        self.moduli().into_iter().reduce(f64::min)
    }

    pub fn max_modulus(&self) -> Option<f64> {
        self.moduli().into_iter().reduce(f64::max)
    }

    /// Nonzero root of least modulus.
    pub fn min_nonzero(&self) -> Option<Complex64> {
        self.roots
            .iter()
            .map(|r| r.z)
            .filter(|z| !z.is_zero())
            .min_by(|a, b| a.norm().total_cmp(&b.norm()))
    }

    pub fn max_residual(&self) -> f64 {
        self.roots.iter().map(|r| r.residual).fold(0.0, f64::max)
    }

    /// `re,im,modulus` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,modulus\n");
        for r in &self.roots {
            writeln!(s, "{:.17e},{:.17e},{:.17e}", r.z.re, r.z.im, r.z.norm()).expect("string write");
        }
        s
    }
}

/// Coefficients as `f64`, scaled by a common power of two so huge integers stay finite.
pub fn scaled_f64_coeffs(p: &IntPoly) -> Vec<f64> {
    let bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    let shift = bits.saturating_sub(1000);
    p.coeffs()
        .iter()
        .map(|c| {
            let v: BigInt = if shift > 0 { c >> shift } else { c.clone() };
            v.to_f64().unwrap_or(0.0)
        })
        .collect()
}

/// `p(z)` and `p'(z)` by Horner.
fn horner2(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn abs_horner(c: &[f64], r: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &a| acc * r + a.abs())
}

/// Double-double numbers `hi + lo` for evaluating ill-conditioned polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd(f64, f64);

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd(s, b - (s - a))
}

impl Dd {
    const ZERO: Dd = Dd(0.0, 0.0);

    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.0, o.0);
        quick_two_sum(s, e + self.1 + o.1)
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = self.0 * b;
        let e = self.0.mul_add(b, -p);
        quick_two_sum(p, e + self.1 * b)
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }
}

#[derive(Debug, Clone, Copy)]
struct DdComplex(Dd, Dd);

impl DdComplex {
    const ZERO: DdComplex = DdComplex(Dd::ZERO, Dd::ZERO);

    fn mul_c(self, z: Complex64) -> DdComplex {
        let re = self.0.mul_f64(z.re).add(self.1.mul_f64(z.im).neg());
        let im = self.0.mul_f64(z.im).add(self.1.mul_f64(z.re));
        DdComplex(re, im)
    }

    fn add_real(self, c: Dd) -> DdComplex {
        DdComplex(self.0.add(c), self.1)
    }

    fn add(self, o: DdComplex) -> DdComplex {
        DdComplex(self.0.add(o.0), self.1.add(o.1))
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.0 .0 + self.0 .1, self.1 .0 + self.1 .1)
    }
}

/// Coefficients as double-doubles, scaled like [`scaled_f64_coeffs`].
fn scaled_dd_coeffs(p: &IntPoly) -> Vec<Dd> {
    let bits = p.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
    let shift = bits.saturating_sub(1000);
    p.coeffs().iter().map(|c| dd_from_big(&if shift > 0 { c >> shift } else { c.clone() })).collect()
}

fn dd_from_big(v: &BigInt) -> Dd {
    let hi = v.to_f64().unwrap_or(0.0);
    let rest = v - BigInt::from_f64(hi).unwrap_or_default();
    Dd(hi, rest.to_f64().unwrap_or(0.0))
}

/// `p(z)` and `p'(z)` with the coefficients of `p` in double-double precision.
pub(super) fn eval_dd(p: &IntPoly, z: Complex64) -> (Complex64, Complex64) {
    let c: Vec<Dd> = p.coeffs().iter().map(dd_from_big).collect();
    horner2_dd(&c, z)
}

fn horner2_dd(c: &[Dd], z: Complex64) -> (Complex64, Complex64) {
    let mut p = DdComplex::ZERO;
    let mut dp = DdComplex::ZERO;
    for &a in c.iter().rev() {
        dp = dp.mul_c(z).add(p);
        p = p.mul_c(z).add_real(a);
    }
    (p.to_c64(), dp.to_c64())
}

/// Newton correction evaluated in double-double arithmetic.
fn newton_ratio_dd(c: &[Dd], rev: &[Dd], z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        let (p, dp) = horner2_dd(c, z);
        p / dp
    } else {
        let m = (c.len() - 1) as f64;
        let y = z.inv();
        let (r, dr) = horner2_dd(rev, y);
        z * r / (r * m - y * dr)
    }
}

/// Backward error with the residual evaluated in double-double arithmetic.
fn backward_error_dd(c: &[Dd], z: Complex64) -> f64 {
    let hi: Vec<f64> = c.iter().map(|d| d.0).collect();
    if z.norm() <= 1.0 {
        horner2_dd(c, z).0.norm() / abs_horner(&hi, z.norm())
    } else {
        let rev: Vec<Dd> = c.iter().rev().copied().collect();
        let hi_rev: Vec<f64> = hi.iter().rev().copied().collect();
        let y = z.inv();
        horner2_dd(&rev, y).0.norm() / abs_horner(&hi_rev, y.norm())
    }
}

/// Aberth sweeps with the Newton correction supplied by `ratio`, refining roots
/// that are already close.
///
/// A root stops when its correction falls below `4 eps |z|`, or when the
/// correction, already below `1e-8 |z|`, no longer halves between sweeps; the
/// latter counts as converged only if the correction is below `64 eps |z|`.
fn aberth_polish(ratio: impl Fn(Complex64) -> Complex64, z: &mut [Complex64], max_iter: usize) -> bool {
    let m = z.len();
    let mut done = vec![false; m];
    let mut last = vec![f64::INFINITY; m];
    let mut ok = true;
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let r = ratio(z[i]);
            let s: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = r / (Complex64::new(1.0, 0.0) - r * s);
            if !w.is_finite() {
                done[i] = true;
                ok = false;
                continue;
            }
            let size = w.norm();
            if size > 0.5 * last[i] && size <= 1e-8 * z[i].norm() {
                done[i] = true;
                ok &= size <= 64.0 * EPS * z[i].norm();
                continue;
            }
            z[i] -= w;
            last[i] = size;
            if size <= 4.0 * EPS * z[i].norm() {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return ok;
        }
    }
    false
}

const MP_BITS: u64 = 320;
const DD_SWEEPS: usize = 40;
const MP_SWEEPS: usize = 100;

const Z_BITS: i32 = 60;

fn to_fixed(x: f64) -> i64 {
    (x * 2f64.powi(Z_BITS)).round() as i64
}

/// Ratio of two big complex numbers as `Complex64`, rescaled to avoid overflow.
fn big_ratio(a: (BigInt, BigInt), b: (BigInt, BigInt)) -> Complex64 {
    let bits = [&a.0, &a.1, &b.0, &b.1].iter().map(|v| v.bits()).max().unwrap_or(0);
    let shift = bits.saturating_sub(900);
    let f = |v: &BigInt| (v >> shift).to_f64().unwrap_or(0.0);
    Complex64::new(f(&a.0), f(&a.1)) / Complex64::new(f(&b.0), f(&b.1))
}

/// `p(z) / p'(z)` for `|z| <= 1`, with `z` rounded to `Z_BITS` fractional bits
/// and Horner run in fixed point with `MP_BITS` fractional bits.
fn newton_ratio_fixed(c: &[BigInt], z: Complex64) -> Complex64 {
    let (zr, zi) = (to_fixed(z.re), to_fixed(z.im));
    let mul = |a: &(BigInt, BigInt)| ((&a.0 * zr - &a.1 * zi) >> Z_BITS, (&a.0 * zi + &a.1 * zr) >> Z_BITS);
    let mut p = (BigInt::zero(), BigInt::zero());
    let mut dp = (BigInt::zero(), BigInt::zero());
    for a in c.iter().rev() {
        let t = mul(&dp);
        dp = (t.0 + &p.0, t.1 + &p.1);
        let t = mul(&p);
        p = (t.0 + (a << MP_BITS), t.1);
    }
    big_ratio(p, dp)
}

/// Newton correction from fixed-point evaluation, through the reversed
/// polynomial outside the unit disk.
fn newton_ratio_mp(c: &[BigInt], rev: &[BigInt], z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        newton_ratio_fixed(c, z)
    } else {
        let m = (c.len() - 1) as f64;
        let y = z.inv();
        let r = newton_ratio_fixed(rev, y);
        z / (m - y / r)
    }
}

/// Newton correction `p(z)/p'(z)`, through the reversed polynomial outside the unit disk.
fn newton_ratio(c: &[f64], rev: &[f64], z: Complex64) -> Complex64 {
    if z.norm() <= 1.0 {
        let (p, dp) = horner2(c, z);
        p / dp
    } else {
        let m = (c.len() - 1) as f64;
        let y = z.inv();
        let (r, dr) = horner2(rev, y);
        z * r / (r * m - y * dr)
    }
}

/// Relative backward error of `z` as a root.
pub fn backward_error(c: &[f64], z: Complex64) -> f64 {
    if z.norm() <= 1.0 {
        let (p, _) = horner2(c, z);
        p.norm() / abs_horner(c, z.norm())
    } else {
        let rev: Vec<f64> = c.iter().rev().copied().collect();
        let y = z.inv();
        let (r, _) = horner2(&rev, y);
        r.norm() / abs_horner(&rev, y.norm())
    }
}

/// Starting radii from the upper convex hull of `(i, log|c_i|)`.
fn initial_guesses(c: &[f64]) -> Vec<Complex64> {
    let m = c.len() - 1;
    let pts: Vec<(f64, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| **a != 0.0)
        .map(|(i, a)| (i as f64, a.abs().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            if (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(m);
    for w in hull.windows(2) {
        let (i, j) = (w[0].0 as usize, w[1].0 as usize);
        let radius = ((w[0].1 - w[1].1) / (j - i) as f64).exp();
        for k in 0..(j - i) {
            let theta = TAU * (k as f64 + 0.25 * out.len() as f64) / (j - i) as f64 + 0.4;
            out.push(Complex64::from_polar(radius, theta));
        }
    }
    out
}

/// Aberth-Ehrlich iteration on `c` (ascending, nonzero constant and leading terms).
fn aberth(c: &[f64], max_iter: usize) -> (Vec<Complex64>, bool) {
    let m = c.len() - 1;
    let rev: Vec<f64> = c.iter().rev().copied().collect();
    let mut z = initial_guesses(c);
    let mut done = vec![false; m];
    let floor = 4.0 * m as f64 * EPS;
    for _ in 0..max_iter {
        let mut all = true;
        for i in 0..m {
            if done[i] {
                continue;
            }
            let ratio = newton_ratio(c, &rev, z[i]);
            let s: Complex64 = (0..m).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
            }
            if !w.is_finite() || w.norm() <= 4.0 * EPS * z[i].norm() || backward_error(c, z[i]) <= floor {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return (z, true);
        }
    }
    (z, false)
}

/// Eigenvalues of the companion matrix of `c`.
pub fn companion_eigen_roots(c: &[f64]) -> Vec<Complex64> {
    let m = c.len() - 1;
    if m == 0 {
        return Vec::new();
    }
    let lead = c[m];
    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 1..m {
        a[(i, i - 1)] = 1.0;
    }
    for i in 0..m {
        a[(i, m - 1)] = -c[i] / lead;
    }
    a.complex_eigenvalues().iter().copied().collect()
}

/// All roots of `p` via its companion matrix, zero roots included.
pub fn companion_roots(p: &IntPoly) -> Vec<Complex64> {
    let (v, core) = p.split_q_power();
    let mut out = vec![Complex64::zero(); v];
    out.extend(companion_eigen_roots(&scaled_f64_coeffs(&core)));
    out
}

fn polish(c: &[f64], z: Complex64) -> Complex64 {
    let rev: Vec<f64> = c.iter().rev().copied().collect();
    let mut z = z;
    for _ in 0..4 {
        let w = newton_ratio(c, &rev, z);
        let next = z - w;
        if !next.is_finite() || backward_error(c, next) > backward_error(c, z) {
            break;
        }
        z = next;
    }
    z
}

fn simple_roots(core: &IntPoly, tol: f64) -> Result<(Vec<(Complex64, f64)>, RootMethod), AnalysisError> {
    let c = scaled_f64_coeffs(core);
    let cd = scaled_dd_coeffs(core);
    let residuals = |z: Vec<Complex64>| -> Vec<(Complex64, f64)> { z.into_iter().map(|z| (z, backward_error_dd(&cd, z))).collect() };
    let worst = |r: &[(Complex64, f64)]| r.iter().map(|x| x.1).fold(0.0, f64::max);
    if c.len() == 1 {
        return Ok((Vec::new(), RootMethod::Aberth));
    }
    let rev_dd: Vec<Dd> = cd.iter().rev().copied().collect();
    let dd = |z| newton_ratio_dd(&cd, &rev_dd, z);
    let max_iter = 500;
    let (mut z, _) = aberth(&c, max_iter);
    let polished = aberth_polish(dd, &mut z, DD_SWEEPS);
    let r = residuals(z.clone());
    if polished && worst(&r) <= tol {
        return Ok((r, RootMethod::Aberth));
    }
    let big = core.coeffs().to_vec();
    let rev_big: Vec<BigInt> = big.iter().rev().cloned().collect();
    let mp = |z| newton_ratio_mp(&big, &rev_big, z);
    if aberth_polish(mp, &mut z, MP_SWEEPS) {
        let r = residuals(z);
        if worst(&r) <= tol {
            return Ok((r, RootMethod::Aberth));
        }
    }
    let mut z: Vec<Complex64> = companion_eigen_roots(&c).into_iter().map(|z| polish(&c, z)).collect();
    aberth_polish(dd, &mut z, DD_SWEEPS);
    aberth_polish(mp, &mut z, MP_SWEEPS);
    let r = residuals(z);
    if worst(&r) <= tol {
        Ok((r, RootMethod::Companion))
    } else {
        Err(AnalysisError::NonConvergence { iterations: max_iter })
    }
}

/// All complex roots of `p`, repeated according to multiplicity, each with
/// relative backward error below `tol` on its square-free factor.
///
/// Repeated factors are split off exactly first. Each square-free factor is
/// solved by Aberth-Ehrlich iteration polished in double-double arithmetic,
/// falling back to companion-matrix eigenvalues.
pub fn find_roots(p: &IntPoly, tol: f64) -> Result<RootSet, AnalysisError> {
    let deg = p.degree().unwrap_or(0);
    if deg < 1 {
        return Err(AnalysisError::DegreeZero);
    }
    let (v, core) = p.split_q_power();
    let mut found: Vec<(Complex64, f64, usize, usize)> = (0..v).map(|_| (Complex64::zero(), 0.0, v, usize::MAX)).collect();
    let mut method = RootMethod::Aberth;
    let parts = if core.degree().unwrap_or(0) >= 1 { core.squarefree_decomposition() } else { Vec::new() };
    for (k, (f, m)) in parts.iter().enumerate() {
        if f.degree().unwrap_or(0) < 1 {
            continue;
        }
        let (roots, how) = simple_roots(f, tol)?;
        if how == RootMethod::Companion {
            method = how;
        }
        for (z, r) in roots {
            found.extend((0..*m).map(|_| (z, r, *m, k)));
        }
    }
    let roots = found
        .iter()
        .map(|&(z, residual, multiplicity, k)| {
            let scale = z.norm().max(1.0);
            let near_multiple = found.iter().any(|&(w, _, _, j)| j != k && (z - w).norm() < 1e-6 * scale);
            Root { z, residual, multiplicity, near_multiple }
        })
        .collect();
    Ok(RootSet { roots, method })
}
