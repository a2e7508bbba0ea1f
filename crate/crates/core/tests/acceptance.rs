//! Acceptance suite: one line per criterion, `[PASS]` or `[FAIL]`.
//!
//! Criteria listed in `KNOWN_RED` restate values that the computation does
//! not reproduce. They are reported as failures with the measured value and
//! do not change the exit status; any other failure exits with status 1.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;

use qreal::analysis::{
    annulus_check, conjecture_scan, family_step_margin, find_roots, genthm_check_with, radius_exact,
    rouche_margin_default, tightness_trend, ScanConfig, DEFAULT_ROOT_TOL, DEFAULT_SAMPLES, R_SQRT2, R_STAR,
};
use qreal::cf::{hj_cf_expand, regular_cf_expand, ContinuedFraction};
use qreal::families::{pell_poly, Family, FamilyName};
use qreal::qdeform::{
    functional_equation, q_cf_hj_eval, q_cf_regular_eval, q_negate, q_rational, q_rational_recursive, q_real_series,
    StabilizationConfig,
};
use qreal::{IntPoly, LaurentPoly, TruncatedLaurentSeries};

const KNOWN_RED: [(&str, &str); 2] = [
    (
        "AC-6c",
        "the largest root modulus of P_10 is 1.76430; 1.8832 is 1/R_sqrt2, the outer bound of the annulus, not a root",
    ),
    (
        "AC-8b",
        "on |q| = r the minimum of |1+q+q^2| is at cos t = -(1+r^2)/(4r), an interior angle, and equals sqrt(3)/2 (1-r^2); at r = R* that is 0.739674 < 2R* = 0.763932",
    ),
];

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn run(id: &'static str, title: &'static str, limit: Option<u64>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let pass = ok && limit.is_none_or(|l| elapsed < l);
    Outcome { id, title, pass, detail, elapsed, limit }
}

fn cf(s: &str) -> ContinuedFraction {
    s.parse().expect("literal")
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn coeffs(spec: &str, order: usize) -> Vec<BigInt> {
    let s = q_real_series(&cf(spec), order, &StabilizationConfig::default()).expect("series").series;
    (0..order as i64).map(|n| s.coeff(n).unwrap_or_default()).collect()
}

fn ac1() -> (bool, String) {
    let cases = [
        (1, 2, "q/(1+q)"),
        (-1, 2, "-1/(q+q^2)"),
        (5, 2, "(1+2q+q^2+q^3)/(1+q)"),
        (5, 3, "(1+q+2q^2+q^3)/(1+q+q^2)"),
        (8, 5, "(1+2q+2q^2+2q^3+q^4)/(1+2q+q^2+q^3)"),
        (13, 8, "(1+2q+3q^2+3q^3+3q^4+q^5)/(1+2q+2q^2+2q^3+q^4)"),
        (21, 13, "(1+3q+4q^2+5q^3+4q^4+3q^5+q^6)/(1+3q+3q^2+3q^3+2q^4+q^5)"),
        (12, 5, "(1+2q+3q^2+3q^3+2q^4+q^5)/(1+q+2q^2+q^3)"),
        (29, 12, "(1+3q+5q^2+6q^3+6q^4+5q^5+2q^6+q^7)/(1+2q+3q^2+3q^3+2q^4+q^5)"),
        (70, 29, "(1+3q+7q^2+11q^3+13q^4+13q^5+11q^6+7q^7+3q^8+q^9)/(1+2q+5q^2+6q^3+6q^4+5q^5+3q^6+q^7)"),
    ];
    let bad: Vec<String> = cases
        .iter()
        .filter(|(r, s, e)| q_rational(*r, *s).map(|x| x.to_string()).as_deref() != Ok(*e))
        .map(|(r, s, _)| format!("{r}/{s}"))
        .collect();
    (bad.is_empty(), format!("{}/{} exact, mismatches {bad:?}", cases.len() - bad.len(), cases.len()))
}

fn ac2() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in 1..=40i64 {
        for s in 1..=40i64 {
            if r.gcd(&s) != 1 {
                continue;
            }
            let a = q_cf_regular_eval(&regular_cf_expand(r, s).unwrap()).unwrap();
            let b = q_cf_hj_eval(&hj_cf_expand(r, s).unwrap()).unwrap();
            let c = q_rational_recursive(r, s).unwrap();
            let neg = q_rational_recursive(-r, s).unwrap();
            if a.value != b.value || a.value != c.value || q_negate(&a).value != neg.value {
                bad.push((r, s));
            }
            checked += 1;
        }
    }
    (bad.is_empty(), format!("{checked} coprime pairs and their negatives, mismatches {bad:?}"))
}

fn generalized_catalan(count: usize) -> Vec<BigInt> {
    let mut a = ints(&[1, 1]);
    while a.len() < count {
        let n = a.len() - 1;
        let s: BigInt = (1..n).map(|k| &a[k] * &a[n - 1 - k]).sum();
        a.push(&a[n] + s);
    }
    a
}

/// Power series root `1 + ...` of `q X^2 + (1 - u) X - 1`, term by term.
fn quadratic_root(u: &[i64], count: usize) -> Vec<BigInt> {
    let mut x = ints(&[1]);
    for n in 1..count {
        let lin: BigInt = u.iter().enumerate().filter(|&(k, _)| (1..=n).contains(&k)).map(|(k, &c)| &x[n - k] * c).sum();
        let quad: BigInt = (0..n).map(|i| &x[i] * &x[n - 1 - i]).sum();
        x.push(lin - quad);
    }
    x
}

fn ac3() -> (bool, String) {
    let phi_shown = ints(&[
        1, 0, 1, -1, 2, -4, 8, -17, 37, -82, 185, -423, 978, -2283, 5373, -12735, 30372, -72832, 175502, -424748, 1032004,
    ]);
    let silver_shown = ints(&[
        1, 1, 0, 0, 1, 0, -2, 1, 4, -5, -7, 18, 7, -55, 18, 146, -155, -322, 692, 476, -2446, 307, 7322, -6276, -18277,
        33061, 33376, -129238, -10899,
    ]);
    let phi = coeffs("[1;(1)]", 21);
    let silver = coeffs("[2;(2)]", 29);
    let a = generalized_catalan(21);
    let catalan = (1..20).all(|n| phi[n + 1] == if n % 2 == 1 { a[n].clone() } else { -a[n].clone() });
    let silver_oracle = silver == quadratic_root(&[0, 2, 0, 1], 29);
    let pass = phi == phi_shown && silver == silver_shown && catalan && silver_oracle;
    (
        pass,
        format!(
            "phi display {}, signed A004148 {catalan}, silver display {}, silver recurrence {silver_oracle}",
            phi == phi_shown,
            silver == silver_shown
        ),
    )
}

fn ac4() -> (bool, String) {
    let order = 40;
    let mut parts = Vec::new();
    let mut pass = true;
    for (spec, b) in [("[1;(1)]", [1, -1, -1, 0]), ("[2;(2)]", [1, -2, 0, -1])] {
        let a = IntPoly::from_i64s(&[0, 1]);
        let b = IntPoly::from_i64s(&b);
        let c = IntPoly::from_i64s(&[-1]);
        let derived = functional_equation(&cf(spec)).is_ok_and(|e| e.a == a && e.b == b && e.c == c);
        let l = |p: &IntPoly| LaurentPoly::from_poly(p.clone());
        let s: TruncatedLaurentSeries = q_real_series(&cf(spec), order, &StabilizationConfig::default()).unwrap().series;
        let zero = s.mul(&s).mul_laurent(&l(&a)).add(&s.mul_laurent(&l(&b))).add_laurent(&l(&c)).is_zero_mod_order();
        pass &= derived && zero;
        parts.push(format!("{spec}: equation {derived}, residual 0 mod q^{order} {zero}"));
    }
    (pass, parts.join("; "))
}

fn ac5() -> (bool, String) {
    let s2 = 2f64.sqrt();
    let s13 = 13f64.sqrt();
    let expected = [
        ("[1;(1)]", (3.0 - 5f64.sqrt()) / 2.0),
        ("[2;(2)]", (1.0 + s2 - (2.0 * s2 - 1.0).sqrt()) / 2.0),
        ("[1;(1,2)]", 0.527756),
        ("[(2,2,1,1)]", (1.0 + s13 - (2.0 * (s13 - 1.0)).sqrt()) / 4.0),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    let mut got = Vec::new();
    for (spec, want) in expected {
        let r = radius_exact(&cf(spec)).map(|r| r.value).unwrap_or(f64::NAN);
        pass &= (r - want).abs() < 1e-6;
        parts.push(format!("{spec} {r:.9}"));
        got.push(r);
    }
    let (g, s) = (got[0], got[1]);
    let rel1 = (g * g - (3.0 * g - 1.0)).abs();
    let rel2 = (s.powi(4) - 2.0 * s.powi(3) + s * s - 2.0 * s + 1.0).abs();
    pass &= rel1 < 1e-12 && rel2 < 1e-12;
    parts.push(format!("relations {rel1:.1e} {rel2:.1e}"));
    (pass, parts.join(", "))
}

fn ac6_annulus() -> (bool, String) {
    let mut pass = true;
    let mut parts = Vec::new();
    for (family, r) in [(Family::Fibonacci, R_STAR), (Family::Pell, R_SQRT2)] {
        match annulus_check(family, 60, r, 1.0 / r) {
            Ok(reports) => {
                let ok = reports.iter().all(|x| x.pass);
                let min = reports.iter().map(|x| x.min_modulus).fold(f64::INFINITY, f64::min);
                let max = reports.iter().map(|x| x.max_modulus).fold(0.0, f64::max);
                pass &= ok;
                parts.push(format!("{family:?}: {} members, moduli in [{min:.6}, {max:.6}] vs ({r:.6}, {:.6})", reports.len(), 1.0 / r));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{family:?}: {e}"));
            }
        }
    }
    (pass, parts.join("; "))
}

fn p10_moduli() -> (f64, f64) {
    let set = find_roots(&pell_poly(10), DEFAULT_ROOT_TOL).expect("P_10 roots");
    (set.min_modulus().unwrap(), set.max_modulus().unwrap())
}

fn ac7() -> (bool, String) {
    let reports = annulus_check(Family::Fibonacci, 60, R_STAR, 1.0 / R_STAR).expect("annulus");
    let trend = tightness_trend(&reports, FamilyName::Fibonacci, 10, 60, 1e-12);
    let gaps = &trend.gaps;
    let consecutive = gaps.windows(2).filter(|w| w[1].1 > w[0].1 + 1e-12).count();
    let pass = trend.monotone() && trend.last_gap() < trend.first_gap() && trend.last_gap().is_some_and(|g| g > 0.0);
    (
        pass,
        format!(
            "gap min|root| - R* from {:.6} (n=10) to {:.6} (n=60); decreasing along each parity, {} rises between neighbours of opposite parity",
            trend.first_gap().unwrap_or(f64::NAN),
            trend.last_gap().unwrap_or(f64::NAN),
            consecutive
        ),
    )
}

fn ac8_margins() -> (bool, String) {
    let mut pass = true;
    let mut parts = Vec::new();
    for (family, r, from) in [(Family::Fibonacci, R_STAR, 2), (Family::Pell, R_SQRT2, 1)] {
        let mut worst = (0, f64::INFINITY);
        for n in from..=60 {
            match family_step_margin(family, n, r, DEFAULT_SAMPLES) {
                Ok(m) if m.safe_margin < worst.1 => worst = (n, m.safe_margin),
                Ok(_) => {}
                Err(e) => {
                    pass = false;
                    parts.push(format!("{family:?} n={n}: {e}"));
                }
            }
        }
        pass &= worst.1 > 0.0;
        parts.push(format!("{family:?} n={from}..60 least certified margin {:.6} at n={}", worst.1, worst.0));
    }
    (pass, parts.join("; "))
}

fn ac8_lemma() -> (bool, String) {
    let three = IntPoly::from_i64s(&[1, 1, 1]);
    match rouche_margin_default(&three, &IntPoly::zero(), &IntPoly::one(), 2, R_STAR) {
        Ok(m) => (
            (m.margin - 2.0 * R_STAR).abs() < 1e-9,
            format!("min {:.12} at arg {:.6}; 2R* = {:.12}", m.margin, m.argmin, 2.0 * R_STAR),
        ),
        Err(e) => (false, e.to_string()),
    }
}

fn ac9() -> (bool, String) {
    let mut pass = true;
    let mut parts = Vec::new();
    for spec in ["[[(4)]]", "[[(5)]]", "[[(4,7)]]", "[[(6,4,5)]]", "[[4,9;(5,4)]]"] {
        let r = genthm_check_with(&cf(spec), 60).expect("checker");
        let emp = r.empirical.as_ref().map(|e| (e.pass, e.min_modulus));
        let ok = r.guaranteed && emp.as_ref().is_ok_and(|e| e.0);
        pass &= ok;
        parts.push(format!("{spec} guaranteed={} min={:.6}", r.guaranteed, emp.map(|e| e.1).unwrap_or(f64::NAN)));
    }
    let r = genthm_check_with(&cf("[[(3)]]"), 60).expect("checker");
    let emp = r.empirical.as_ref().map(|e| (e.pass, e.min_modulus));
    pass &= !r.guaranteed && emp.as_ref().is_ok_and(|e| e.0);
    parts.push(format!("[[(3)]] guaranteed={} min={:.6}", r.guaranteed, emp.map(|e| e.1).unwrap_or(f64::NAN)));
    (pass, parts.join("; "))
}

fn ac10() -> (bool, String) {
    let config = ScanConfig { seed: 0, samples: 1000, ..Default::default() };
    let report = conjecture_scan(&config);
    let again = conjecture_scan(&config);
    let deterministic = report == again;
    let violations = report.violations().len();
    let golden_tail = |c: &ContinuedFraction| c.period().iter().all(|&a| a == 1);
    let equality = report.equality_cases();
    let only_translates = equality.iter().all(|s| golden_tail(&s.cf));
    let all_translates_hit = report
        .samples
        .iter()
        .filter(|s| golden_tail(&s.cf))
        .all(|s| s.radius.is_some_and(|r| (r - R_STAR).abs() < 1e-9));
    let min = report.min_radius().and_then(|s| s.radius).unwrap_or(f64::NAN);
    let pass = deterministic && violations == 0 && !equality.is_empty() && only_translates && all_translates_hit;
    (
        pass,
        format!(
            "{} samples: {violations} violations, {} unconfirmed, {} failed, min R {min:.12}, {} equality cases all with period (1): {only_translates}, every (1)-tail sample hits R*: {all_translates_hit}, deterministic: {deterministic}",
            report.samples.len(),
            report.count(qreal::analysis::SampleStatus::Unconfirmed),
            report.count(qreal::analysis::SampleStatus::Failed),
            equality.len()
        ),
    )
}

fn main() -> ExitCode {
    let (mut min10, mut max10) = (0.0, 0.0);
    let outcomes = vec![
        run("AC-1", "golden q-rationals", Some(1), ac1),
        run("AC-2", "three definitions of [r/s]_q agree, r,s <= 40", Some(30), ac2),
        run("AC-3", "series of [phi]_q to q^20 and [sqrt2+1]_q to q^28", Some(10), ac3),
        run("AC-4", "functional equations mod q^40", None, ac4),
        run("AC-5", "exact radii within 1e-6", None, ac5),
        run("AC-6a", "Fibonacci and Pell roots inside their annuli, n <= 60", Some(60), ac6_annulus),
        run("AC-6b", "P_10 smallest root modulus 0.5668 +- 1e-3", None, || {
            (min10, max10) = p10_moduli();
            ((min10 - 0.5668).abs() < 1e-3, format!("{min10:.6}"))
        }),
        run("AC-6c", "P_10 largest root modulus 1.8832 +- 1e-3", None, || {
            ((max10 - 1.8832).abs() < 1e-3, format!("{max10:.6}"))
        }),
        run("AC-7", "smallest Fibonacci root modulus tends to R*, n = 10..60", None, ac7),
        run("AC-8a", "recurrence-step margins positive, n <= 60", None, ac8_margins),
        run("AC-8b", "min |q^2+q+1| on |q| = R* equals 2R* within 1e-9", None, ac8_lemma),
        run("AC-9", "HJ terms >= 4 guarantee root-free disk; c = 3 passes empirically", None, ac9),
        run("AC-10", "seeded scan of 1000 periodic expansions", Some(600), ac10),
    ];

    let mut unexpected = 0;
    for o in &outcomes {
        let limit = o.limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "[{}] {} {}: {} [{:.2}s{limit}]",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail,
            o.elapsed.as_secs_f64()
        );
        let known = KNOWN_RED.iter().find(|k| k.0 == o.id);
        match (o.pass, known) {
            (false, Some((_, why))) => println!("       known discrepancy: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("       listed as a known discrepancy but now passes"),
            (true, None) => {}
        }
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    println!("{passed} of {} criteria pass; {unexpected} unexpected failures", outcomes.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
