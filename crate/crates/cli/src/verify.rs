use std::process::ExitCode;

use serde_json::json;

use qreal::analysis::{
    annulus_check, find_roots, radius_exact, rouche_margin_default, DEFAULT_ROOT_TOL, R_BRONZE, R_SQRT2, R_STAR,
};
use qreal::cf::ContinuedFraction;
use qreal::exactalg::{IntPoly, LaurentPoly, TruncatedLaurentSeries};
use qreal::families::{family_quotient, pell_poly, triangle_rows, Family, FamilyName};
use qreal::qdeform::{functional_equation, q_rational, q_real_series, StabilizationConfig};

use super::{CmdResult, Out};

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), pass, detail: detail.into() }
}

const Q_RATIONALS: [(i64, i64, &str); 10] = [
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

const PHI_SERIES: [i64; 21] = [
    1, 0, 1, -1, 2, -4, 8, -17, 37, -82, 185, -423, 978, -2283, 5373, -12735, 30372, -72832, 175502, -424748, 1032004,
];

const SILVER_SERIES: [i64; 29] = [
    1, 1, 0, 0, 1, 0, -2, 1, 4, -5, -7, 18, 7, -55, 18, 146, -155, -322, 692, 476, -2446, 307, 7322, -6276, -18277,
    33061, 33376, -129238, -10899,
];

fn cf(s: &str) -> ContinuedFraction {
    s.parse().expect("literal continued fraction")
}

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn checks() -> Vec<Check> {
    let mut out = Vec::new();
    let cfg = StabilizationConfig::default();

    for (r, s, expect) in Q_RATIONALS {
        let got = q_rational(r, s).map(|x| x.to_string()).unwrap_or_else(|e| e.to_string());
        out.push(check(format!("[{r}/{s}]_q"), got == expect, got));
    }

    for (name, spec, coeffs) in [("[phi]_q to q^20", "[1;(1)]", &PHI_SERIES[..]), ("[sqrt2+1]_q to q^28", "[2;(2)]", &SILVER_SERIES[..])] {
        let expect = TruncatedLaurentSeries::from_i64s(0, coeffs);
        let got = q_real_series(&cf(spec), coeffs.len(), &cfg).map(|s| s.series);
        let pass = got.as_ref().is_ok_and(|s| *s == expect);
        out.push(check(name, pass, got.map(|s| s.to_string()).unwrap_or_else(|e| e.to_string())));
    }

    for (name, spec, a, b, c) in [
        ("qX^2-(q^2+q-1)X-1", "[1;(1)]", p(&[0, 1]), p(&[1, -1, -1]), p(&[-1])),
        ("qX^2-(q^3+2q-1)X-1", "[2;(2)]", p(&[0, 1]), p(&[1, -2, 0, -1]), p(&[-1])),
    ] {
        let x = cf(spec);
        let eq = functional_equation(&x);
        let same = eq.as_ref().is_ok_and(|e| e.a == a && e.b == b && e.c == c);
        let residual = q_real_series(&x, 40, &cfg).map(|s| {
            let l = |p: &IntPoly| LaurentPoly::from_poly(p.clone());
            let s = s.series;
            s.mul(&s).mul_laurent(&l(&a)).add(&s.mul_laurent(&l(&b))).add_laurent(&l(&c))
        });
        let vanishes = residual.as_ref().is_ok_and(|r| r.is_zero_mod_order());
        out.push(check(format!("{name} = 0 mod q^40"), same && vanishes, format!("equation derived: {same}, residual zero: {vanishes}")));
    }

    let s2 = 2f64.sqrt();
    let radii = [
        ("R(phi)", "[1;(1)]", (3.0 - 5f64.sqrt()) / 2.0, Some("q^2+3q+1")),
        ("R(sqrt2)", "[1;(2)]", (1.0 + s2 - (2.0 * s2 - 1.0).sqrt()) / 2.0, Some("q^4+q^3+4q^2+q+1")),
        ("R(sqrt3)", "[1;(1,2)]", 0.527756, Some("q^6+2q^5+3q^4+3q^2+2q+1")),
        ("R(bronze)", "[(2,2,1,1)]", R_BRONZE, None),
    ];
    for (name, spec, expect, cert) in radii {
        match radius_exact(&cf(spec)) {
            Ok(r) => {
                let poly = r.certificate.as_ref().map(|c| c.polynomial.display_descending()).unwrap_or_default();
                let pass = (r.value - expect).abs() < 1e-6 && cert.is_none_or(|c| c == poly);
                out.push(check(name, pass, format!("{:.12} certificate {poly}", r.value)));
            }
            Err(e) => out.push(check(name, false, e.to_string())),
        }
    }

    let fib: Vec<String> = triangle_rows(FamilyName::Fibonacci, 7).iter().map(|r| join(r)).collect();
    out.push(check("Fibonacci triangle rows 6-7", fib[5] == "1 3 3 3 2 1" && fib[6] == "1 3 4 5 4 3 1", fib[5..].join(" / ")));
    let pell: Vec<String> = triangle_rows(FamilyName::Pell, 7).iter().map(|r| join(r)).collect();
    out.push(check("Pell triangle row 7", pell[6] == "1 3 9 16 24 29 29 25 18 10 4 1", pell[6].clone()));
    let q85 = family_quotient(Family::Fibonacci, 5).map(|x| x.to_string()).unwrap_or_default();
    out.push(check("F~_6/F_5 = [8/5]_q", q85 == Q_RATIONALS[4].2, q85));
    let q125 = family_quotient(Family::Pell, 3).map(|x| x.to_string()).unwrap_or_default();
    out.push(check("P~_4/P_3 = [12/5]_q", q125 == Q_RATIONALS[7].2, q125));

    let fib_ok = annulus_check(Family::Fibonacci, 60, R_STAR, 1.0 / R_STAR).map(|r| r.iter().all(|x| x.pass));
    out.push(check("Fibonacci roots in (R*, 1/R*), n <= 60", fib_ok == Ok(true), format!("{fib_ok:?}")));
    let pell_ok = annulus_check(Family::Pell, 60, R_SQRT2, 1.0 / R_SQRT2).map(|r| r.iter().all(|x| x.pass));
    out.push(check("Pell roots in (R_sqrt2, 1/R_sqrt2), n <= 60", pell_ok == Ok(true), format!("{pell_ok:?}")));

    match find_roots(&pell_poly(10), DEFAULT_ROOT_TOL) {
        Ok(set) => {
            let (min, max) = (set.min_modulus().unwrap_or(f64::NAN), set.max_modulus().unwrap_or(f64::NAN));
            out.push(check("P_10 smallest root modulus 0.5668", (min - 0.5668).abs() < 1e-3, format!("{min:.6}")));
            out.push(check("P_10 largest root modulus 1.8832", (max - 1.8832).abs() < 1e-3, format!("{max:.6}")));
        }
        Err(e) => out.push(check("P_10 roots", false, e.to_string())),
    }

    let three = p(&[1, 1, 1]);
    match rouche_margin_default(&three, &IntPoly::zero(), &IntPoly::one(), 2, R_STAR) {
        Ok(r) => out.push(check(
            "min |q^2+q+1| on |q| = R* is 2R*",
            (r.margin - 2.0 * R_STAR).abs() < 1e-9,
            format!("{:.12} at arg {:.6}, 2R* = {:.12}", r.margin, r.argmin, 2.0 * R_STAR),
        )),
        Err(e) => out.push(check("min |q^2+q+1| on |q| = R*", false, e.to_string())),
    }
    out
}

fn join(row: &[num_bigint::BigInt]) -> String {
    row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub(crate) fn run(out: &Out) -> CmdResult {
    let checks = checks();
    let failed = checks.iter().filter(|c| !c.pass).count();
    out.emit(
        json!({
            "suite": "paper",
            "checks": checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect::<Vec<_>>(),
            "failed": failed,
        }),
        || {
            let mut s: String = checks
                .iter()
                .map(|c| format!("[{}] {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail))
                .collect();
            s += &format!("{} of {} checks passed\n", checks.len() - failed, checks.len());
            s
        },
    );
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
