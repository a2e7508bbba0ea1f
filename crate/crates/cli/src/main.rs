//! `qreal`: command-line access to q-deformed rationals, reals, polynomial
//! families and convergence radii.

use std::error::Error;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use qreal::analysis::{
    annulus_check, conjecture_scan, find_roots, genthm_check_with, radius_exact, radius_numeric, radius_rational,
    tightness_trend, RadiusReport, ScanConfig, SampleStatus, DEFAULT_ROOT_TOL, R_SQRT2, R_STAR,
};
use qreal::cf::{hj_cf_expand, hj_to_regular, regular_cf_expand, regular_to_hj, CfKind, ContinuedFraction};
use qreal::families::{family_poly, triangle_csv, triangle_flat, triangle_rows, Family, FamilyName};
use qreal::qdeform::{parse_rational, q_cf_hj_eval, q_cf_regular_eval, q_rational, q_real_series, StabilizationConfig};

mod verify;

#[derive(Parser, Debug)]
#[command(name = "qreal", version, about = "q-deformed rational and real numbers")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Decimal digits for printed real numbers.
    #[arg(long, global = true, env = "QREAL_PRECISION", default_value_t = 10)]
    precision: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print [r/s]_q as a reduced rational function.
    Qrat {
        #[arg(value_parser = parse_pair, allow_hyphen_values = true)]
        x: (BigInt, BigInt),
    },
    /// Stable Taylor coefficients of [x]_q.
    Series(SeriesArgs),
    /// Convert between regular and Hirzebruch-Jung expansions.
    Cf {
        #[arg(long, value_enum)]
        to: Kind,
        /// A rational `r/s` or a continued fraction.
        input: String,
    },
    /// Members and coefficient triangles of the Fibonacci and Pell families.
    Family {
        #[arg(value_parser = parse_family_name)]
        family: FamilyName,
        #[arg(long)]
        n: usize,
        /// Print the first `n` triangle rows instead.
        #[arg(long)]
        triangle: bool,
        #[arg(long, value_enum, default_value_t = TriangleFormat::Rows)]
        format: TriangleFormat,
    },
    /// Complex roots of a family member.
    Roots {
        #[arg(long, value_parser = parse_family_name)]
        family: FamilyName,
        #[arg(long)]
        n: usize,
        /// Write `re,im,modulus` rows here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
        tol: f64,
    },
    /// Check that all roots lie in an annulus.
    Annulus {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        inner: Option<f64>,
        #[arg(long)]
        outer: Option<f64>,
    },
    /// Radius of convergence of [x]_q.
    Radius(RadiusArgs),
    /// Check the HJ coefficient condition and locate convergent denominator roots.
    Genthm {
        #[arg(long, value_parser = parse_cf)]
        cf: ContinuedFraction,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
    },
    /// Compare radii of random continued fractions with R*.
    Scan(ScanArgs),
    /// Reproduce the displayed values.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long, value_parser = parse_cf)]
    cf: ContinuedFraction,
    #[arg(long)]
    order: usize,
    /// Write an OEIS b-file of the coefficients here.
    #[arg(long)]
    bfile: Option<PathBuf>,
    #[arg(long, default_value_t = 400)]
    max_depth: usize,
}

#[derive(Args, Debug)]
struct RadiusArgs {
    #[arg(long, value_parser = parse_cf)]
    cf: ContinuedFraction,
    #[arg(long, conflicts_with = "numeric")]
    exact: bool,
    #[arg(long)]
    numeric: bool,
    /// Series coefficients for the numeric estimate.
    #[arg(long, default_value_t = 120, requires = "numeric")]
    depth: usize,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Additional finite expansions.
    #[arg(long, default_value_t = 0)]
    finite: usize,
    #[arg(long, default_value_t = 4)]
    max_entry: i64,
    #[arg(long, default_value_t = 3)]
    max_prefix: usize,
    #[arg(long, default_value_t = 6)]
    max_period: usize,
    /// Include every sample in the output.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Hj,
    Regular,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TriangleFormat {
    Rows,
    Csv,
    Flat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Paper,
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_cf(s: &str) -> Result<ContinuedFraction, String> {
    s.parse().map_err(|e: qreal::cf::CfError| e.to_string())
}

fn parse_family_name(s: &str) -> Result<FamilyName, String> {
    s.parse().map_err(|e: qreal::families::FamilyError| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: qreal::families::FamilyError| e.to_string())
}

type CmdResult = Result<ExitCode, Box<dyn Error>>;

struct Out {
    json: bool,
    precision: usize,
}

impl Out {
    fn real(&self, x: f64) -> String {
        if x.is_finite() {
            format!("{:.*}", self.precision, x)
        } else {
            "inf".to_string()
        }
    }

    fn emit(&self, v: Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
        } else {
            print!("{}", text());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out { json: cli.json, precision: cli.precision };
    match run(cli.command, &out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, out: &Out) -> CmdResult {
    match command {
        Command::Qrat { x: (r, s) } => qrat(&r, &s, out),
        Command::Series(args) => series(args, out),
        Command::Cf { to, input } => cf(to, &input, out),
        Command::Family { family, n, triangle, format } => family_cmd(family, n, triangle, format, out),
        Command::Roots { family, n, csv, tol } => roots(family, n, csv, tol, out),
        Command::Annulus { family, max, inner, outer } => annulus(family, max, inner, outer, out),
        Command::Radius(args) => radius(args, out),
        Command::Genthm { cf, n_max } => genthm(&cf, n_max, out),
        Command::Scan(args) => scan(args, out),
        Command::Verify { suite: Suite::Paper } => verify::run(out),
    }
}

fn qrat(r: &BigInt, s: &BigInt, out: &Out) -> CmdResult {
    let x = q_rational(r.clone(), s.clone())?;
    let (r, s) = x.source();
    out.emit(
        json!({
            "r": r.to_string(),
            "s": s.to_string(),
            "num": x.num().to_string(),
            "den": x.den().to_string(),
            "value": x.to_string(),
        }),
        || format!("{x}\n"),
    );
    Ok(ExitCode::SUCCESS)
}

fn series(args: SeriesArgs, out: &Out) -> CmdResult {
    let config = StabilizationConfig { max_depth: args.max_depth, ..Default::default() };
    let s = q_real_series(&args.cf, args.order, &config)?;
    if let Some(path) = &args.bfile {
        fs::write(path, s.series.to_bfile())?;
    }
    out.emit(s.to_json(), || format!("{}\n", s.series));
    Ok(ExitCode::SUCCESS)
}

fn cf(to: Kind, input: &str, out: &Out) -> CmdResult {
    let converted = match parse_rational(input) {
        Ok((r, s)) => match to {
            Kind::Hj => hj_cf_expand(r, s)?,
            Kind::Regular => regular_cf_expand(r, s)?,
        },
        Err(_) => {
            let cf: ContinuedFraction = input.parse()?;
            match (to, cf.kind()) {
                (Kind::Hj, CfKind::Regular) => regular_to_hj(&cf)?,
                (Kind::Regular, CfKind::HJ) => hj_to_regular(&cf)?,
                _ => cf,
            }
        }
    };
    let value = converted.value().map(|v| v.to_string());
    out.emit(
        json!({ "input": input, "cf": converted.to_json(), "text": converted.to_string(), "value": value }),
        || format!("{converted}\n"),
    );
    Ok(ExitCode::SUCCESS)
}

fn family_cmd(name: FamilyName, n: usize, triangle: bool, format: TriangleFormat, out: &Out) -> CmdResult {
    if triangle {
        let rows = triangle_rows(name, n);
        let text = match format {
            TriangleFormat::Rows => rows
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
                .collect(),
            TriangleFormat::Csv => triangle_csv(&rows),
            TriangleFormat::Flat => triangle_flat(&rows) + "\n",
        };
        let json_rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        out.emit(json!({ "family": name.to_string(), "rows": json_rows }), || text);
    } else {
        let p = family_poly(name, n)?;
        out.emit(
            json!({ "family": name.to_string(), "n": n, "poly": p.to_string(), "coeffs": p.to_json() }),
            || format!("{p}\n"),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn roots(name: FamilyName, n: usize, csv: Option<PathBuf>, tol: f64, out: &Out) -> CmdResult {
    let p = family_poly(name, n)?;
    let set = find_roots(&p, tol)?;
    if let Some(path) = &csv {
        fs::write(path, set.to_csv())?;
    }
    let min = set.min_modulus().unwrap_or(f64::NAN);
    let max = set.max_modulus().unwrap_or(f64::NAN);
    out.emit(
        json!({
            "family": name.to_string(),
            "n": n,
            "degree": set.len(),
            "min_modulus": min,
            "max_modulus": max,
            "max_residual": set.max_residual(),
            "method": format!("{:?}", set.method),
            "roots": set.roots.iter().map(|r| json!([r.z.re, r.z.im, r.z.norm(), r.residual, r.multiplicity, r.near_multiple])).collect::<Vec<_>>(),
        }),
        || {
            let mut s = format!(
                "{name} n={n} degree={} min|q|={} max|q|={}\n",
                set.len(),
                out.real(min),
                out.real(max)
            );
            for r in &set.roots {
                s += &format!("{} {} {}\n", out.real(r.z.re), out.real(r.z.im), out.real(r.z.norm()));
            }
            s
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn annulus(family: Family, max: usize, inner: Option<f64>, outer: Option<f64>, out: &Out) -> CmdResult {
    let r = match family {
        Family::Fibonacci => R_STAR,
        Family::Pell => R_SQRT2,
    };
    let (inner, outer) = (inner.unwrap_or(r), outer.unwrap_or(1.0 / r));
    let reports = annulus_check(family, max, inner, outer)?;
    let trend = tightness_trend(&reports, FamilyName::plain(family), 2, max, 1e-12);
    let all = reports.iter().all(|r| r.pass);
    out.emit(
        json!({
            "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "all_pass": all,
            "trend": trend.to_json(),
        }),
        || {
            let mut s = format!("annulus ({}, {})\n", out.real(inner), out.real(outer));
            for r in &reports {
                s += &format!(
                    "{:<6} n={:<3} min={} max={} {}\n",
                    r.name.to_string(),
                    r.n,
                    out.real(r.min_modulus),
                    out.real(r.max_modulus),
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
            s += &format!("all pass: {all}\n");
            s += &format!(
                "gap to inner bound: {} -> {} (parity-monotone: {})\n",
                out.real(trend.first_gap().unwrap_or(f64::NAN)),
                out.real(trend.last_gap().unwrap_or(f64::NAN)),
                trend.monotone()
            );
            s
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn radius_text(r: &RadiusReport, out: &Out) -> String {
    let mut s = format!("{}\n", out.real(r.value));
    if let Some(c) = &r.certificate {
        s += &format!("certificate: {}\n", c.polynomial.display_descending());
    }
    s
}

fn radius(args: RadiusArgs, out: &Out) -> CmdResult {
    if args.numeric {
        let config = StabilizationConfig { max_depth: args.depth.max(400), ..Default::default() };
        let s = q_real_series(&args.cf, args.depth, &config)?;
        let n = radius_numeric(&s.series)?;
        out.emit(n.to_json(), || {
            format!(
                "ratio: {}\nroot: {}\nuncertainty: {}\ncoefficients: {}\n",
                out.real(n.ratio.value),
                out.real(n.root.value),
                out.real(n.root.uncertainty.unwrap_or(f64::NAN)),
                n.root.coefficient_count
            )
        });
    } else {
        let report = if args.cf.is_finite() {
            let x = match args.cf.kind() {
                CfKind::Regular => q_cf_regular_eval(&args.cf)?,
                CfKind::HJ => q_cf_hj_eval(&args.cf)?,
            };
            radius_rational(&x.value)?
        } else {
            radius_exact(&args.cf)?
        };
        out.emit(report.to_json(), || radius_text(&report, out));
    }
    Ok(ExitCode::SUCCESS)
}

fn genthm(cf: &ContinuedFraction, n_max: usize, out: &Out) -> CmdResult {
    let r = genthm_check_with(cf, n_max)?;
    out.emit(r.to_json(), || {
        let mut s = format!("hj: {}\nguaranteed: {}\n", r.hj, r.guaranteed);
        if let Some(n) = r.n {
            s += &format!("N: {n}\n");
        }
        match &r.empirical {
            Ok(e) => {
                s += &format!(
                    "denominators S_1..S_{}: min root modulus {} at n={} ({} R* = {})\n",
                    e.n_max,
                    out.real(e.min_modulus),
                    e.argmin,
                    if e.pass { ">" } else { "<=" },
                    out.real(e.bound)
                );
            }
            Err(err) => s += &format!("empirical check failed: {err}\n"),
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn scan(args: ScanArgs, out: &Out) -> CmdResult {
    let config = ScanConfig {
        seed: args.seed,
        samples: args.samples,
        finite_samples: args.finite,
        max_entry: args.max_entry,
        max_prefix: args.max_prefix,
        max_period: args.max_period,
        ..Default::default()
    };
    let report = conjecture_scan(&config);
    out.emit(report.to_json(args.list), || {
        let mut s = format!("seed {} samples {} finite {}\n", config.seed, config.samples, config.finite_samples);
        for status in [SampleStatus::Ok, SampleStatus::Violation, SampleStatus::Unconfirmed, SampleStatus::Failed] {
            s += &format!("{status:?}: {}\n", report.count(status));
        }
        if let Some(m) = report.min_radius() {
            s += &format!("min radius {} at {}\n", out.real(m.radius.unwrap_or(f64::NAN)), m.cf);
        }
        s += &format!("equality cases: {}\n", report.equality_cases().len());
        let degrees: Vec<String> = report.degree_histogram().iter().map(|(d, n)| format!("{d}:{n}")).collect();
        s += &format!("certificate degrees: {}\n", degrees.join(" "));
        if args.list {
            for x in &report.samples {
                s += &format!(
                    "{} {} {:?} {}\n",
                    x.index,
                    x.cf,
                    x.status,
                    x.radius.map_or("-".to_string(), |r| out.real(r))
                );
            }
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}
