//! `horocauchy`: root-lattice classification, Cauchy transforms on the
//! one-sheeted hyperboloid, their inversion, and the verification batteries.
//!
//! Exit codes: 0 success, 1 domain or precondition error (including a
//! divergent inverse transform), 2 a verification check failed, 3 an I/O or
//! parse error.

mod output;
mod points;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use horocauchy::hyperboloid::{CVec3, HoroPoint};
use horocauchy::quadrature::{CompositeRule, QuadratureSpec};
use horocauchy::record::{cvec_value, Record};
use horocauchy::rootlattice::{fixtures, q as rational, LatticeError, RootDatum, WeightVector, Q};
use horocauchy::transform::{
    euler_sign, inversion_pipeline, FiberCurve, PreparedFunction, TestFunction, TransformError, DEFAULT_STEP,
};
use horocauchy::verify::{run_battery, VerifyError, BATTERIES};
use num_complex::Complex64;
use serde_json::Value;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "horocauchy", version, about = "Cauchy transforms on the one-sheeted hyperboloid")]
struct Cli {
    /// Outer quadrature as `t_max,n_t,n_theta`.
    #[arg(long, global = true, value_name = "T,NT,NTHETA")]
    quad: Option<String>,
    /// Fiber quadrature as `t_max,n`.
    #[arg(long, global = true, value_name = "T,N")]
    fiber: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "jsonl")]
    format: Format,
    /// Seed for the randomized batteries.
    #[arg(long, global = true, default_value_t = 20_260_418)]
    seed: u64,
    /// Write records to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify weights of a root datum.
    Lattice {
        /// A root-datum file, or one of the built-in names sl2, group, su21, rank1:M.
        datum: String,
        /// Weight coordinates in the fundamental-weight basis, e.g. `2,1` (repeatable).
        #[arg(long = "lambda", value_name = "K1,K2,..")]
        lambdas: Vec<String>,
        /// Classify every weight with all coordinates in [-N, N].
        #[arg(long, value_name = "N", conflicts_with = "lambdas")]
        enumerate: Option<u32>,
        /// Constant of the formal dimension, an integer or `p/q`.
        #[arg(long, default_value = "1")]
        c: String,
    },
    /// Evaluate the Cauchy transform of a test function.
    Transform {
        /// Test function: `matrix` (needs --w and --lambda), `gaussian` or `zero`.
        #[arg(long, default_value = "matrix")]
        f: String,
        #[arg(long, default_value = "2z0")]
        w: String,
        #[arg(long, default_value_t = 2)]
        lambda: u32,
        /// Evaluation points on the horosphere cone (repeatable).
        #[arg(long, required = true)]
        zeta: Vec<String>,
        /// Report the homogeneous component of this degree instead.
        #[arg(long, value_name = "MU", conflicts_with = "apply_l")]
        component: Option<u32>,
        /// Report `L f^` instead of `f^`.
        #[arg(long)]
        apply_l: bool,
    },
    /// Reconstruct matrix coefficients from their Cauchy transforms.
    Invert {
        #[arg(long, default_value = "2z0")]
        w: String,
        /// Comma-separated list of degrees.
        #[arg(long, default_value = "2")]
        lambda: String,
        /// Points of D+ (repeatable); defaults to five points of the curve (cosh s, i sinh s, 0).
        #[arg(long)]
        z: Vec<String>,
        /// Emit |integrand| along the fiber of the first point instead.
        #[arg(long)]
        profile: bool,
    },
    /// Run verification batteries (`all` runs every battery).
    Verify {
        #[arg(required = true, value_name = "BATTERY")]
        batteries: Vec<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Verification(String),
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Input(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Verification(m) | CliError::Input(m) => m,
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Quadrature(q) => CliError::Input(q.to_string()),
            TransformError::Divergence(m) => CliError::Domain(format!("divergent fiber integral: {m}")),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Unsupported(_) | LatticeError::Singular(_) => CliError::Domain(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::UnknownBattery(b) => {
                CliError::Input(format!("unknown battery {b:?}; known: all, {}", BATTERIES.join(", ")))
            }
            VerifyError::Transform(t) => t.into(),
            VerifyError::Lattice(l) => l.into(),
        }
    }
}

fn input<T>(r: Result<T, String>) -> Result<T, CliError> {
    r.map_err(CliError::Input)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("horocauchy: error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let q = input(points::quadrature(cli.quad.as_deref(), cli.fiber.as_deref()))?;
    q.validate().map_err(|e| CliError::Input(e.to_string()))?;
    let (records, verdict) = match &cli.command {
        Command::Lattice {
            datum,
            lambdas,
            enumerate,
            c,
        } => (lattice(datum, lambdas, *enumerate, c)?, Ok(())),
        Command::Transform {
            f,
            w,
            lambda,
            zeta,
            component,
            apply_l,
        } => (transform(f, w, *lambda, zeta, *component, *apply_l, &q)?, Ok(())),
        Command::Invert { w, lambda, z, profile } => (invert(w, lambda, z, *profile, &q)?, Ok(())),
        Command::Verify { batteries } => verify(batteries, cli.seed, &q)?,
    };
    let bytes = input(output::render(&records, cli.format))?;
    input(output::emit(&bytes, cli.out.as_deref()))?;
    verdict
}

fn load(datum: &str) -> Result<RootDatum, CliError> {
    match datum {
        "sl2" => Ok(fixtures::sl2()),
        "group" => Ok(fixtures::group_case()),
        "su21" => Ok(fixtures::su21()),
        other => match other.strip_prefix("rank1:") {
            Some(m) => Ok(fixtures::rank_one(input(points::parse_u32(m))?)?),
            None => Ok(fixtures::load_datum(other)?),
        },
    }
}

fn parse_rational(s: &str) -> Result<Q, String> {
    let bad = || format!("invalid rational {s:?}");
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: i64 = n.parse().map_err(|_| bad())?;
    let d: i64 = d.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(rational(n, d))
}

fn lattice(datum: &str, lambdas: &[String], enumerate: Option<u32>, c: &str) -> Result<Vec<Record>, CliError> {
    let rd = load(datum)?;
    let c = input(parse_rational(c))?;
    let omegas = rd.fundamental_weights()?;
    let weights: Vec<WeightVector> = match enumerate {
        Some(n) => rd.enumerate_weights(n)?,
        None if lambdas.is_empty() => {
            return Err(CliError::Input("lattice needs --lambda or --enumerate".into()));
        }
        None => {
            let mut out = Vec::new();
            for s in lambdas {
                let k = input(points::parse_list(s, parse_rational))?;
                if k.len() != rd.rank() {
                    return Err(LatticeError::Dimension {
                        expected: rd.rank(),
                        got: k.len(),
                    }
                    .into());
                }
                let mut w = WeightVector::zero(rd.rank());
                for (ki, om) in k.iter().zip(&omegas) {
                    w = &w + &om.scale(ki);
                }
                out.push(w);
            }
            out
        }
    };
    let join = |v: &[Q]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut records = Vec::with_capacity(weights.len());
    for w in &weights {
        let class = rd.classify(w)?;
        let dim = match rd.formal_dimension(w, &c) {
            Ok(d) => Value::from(d.to_string()),
            Err(LatticeError::Unsupported(_)) => Value::Null,
            Err(e) => return Err(e.into()),
        };
        records.push(
            Record::new("lattice.classify")
                .input("datum", rd.name())
                .input("omega", join(&rd.omega_coordinates(w)?))
                .input("c", c.to_string())
                .extra("coords", join(&w.0))
                .extra("lambda_0", class.lambda_0)
                .extra("lambda_ge0", class.lambda_ge0)
                .extra("lambda_gt0", class.lambda_gt0)
                .extra("lambda_1", class.lambda_1)
                .extra("lambda_2", class.lambda_2)
                .extra("lambda_sd", class.lambda_sd)
                .extra("lambda_c", class.lambda_c)
                .extra("formal_dimension", dim),
        );
    }
    Ok(records)
}

fn test_function(f: &str, w: &str, lambda: u32) -> Result<TestFunction, CliError> {
    match f {
        "zero" => Ok(TestFunction::Zero),
        "gaussian" => Ok(TestFunction::custom("gaussian", |x| {
            Complex64::new((-(x.0[0] * x.0[0] + x.0[1] * x.0[1] + x.0[2] * x.0[2])).exp(), 0.0)
        })),
        "matrix" => Ok(TestFunction::matrix_coefficient(input(points::parse_point(w))?, lambda)?),
        other => Err(CliError::Input(format!(
            "unknown test function {other:?}; expected matrix, gaussian or zero"
        ))),
    }
}

fn function_inputs(mut r: Record, f: &str, w: &str, lambda: u32) -> Record {
    r = r.input("f", f);
    if f == "matrix" {
        r = r.input("w", w).input("lambda", lambda);
    }
    r
}

fn transform(
    f: &str,
    w: &str,
    lambda: u32,
    zetas: &[String],
    component: Option<u32>,
    apply_l: bool,
    q: &QuadratureSpec,
) -> Result<Vec<Record>, CliError> {
    let tf = test_function(f, w, lambda)?;
    let prepared = PreparedFunction::new(&tf, q)?;
    let operation = match (component, apply_l) {
        (Some(_), _) => "fourier_component",
        (None, true) => "apply_l",
        (None, false) => "cauchy_transform",
    };
    let mut records = Vec::with_capacity(zetas.len());
    for s in zetas {
        let point = input(points::parse_point(s))?;
        let zeta = HoroPoint::interior(point).map_err(TransformError::from)?;
        let value = match (component, apply_l) {
            (Some(mu), _) => prepared.fourier_component(&zeta, mu)?,
            (None, true) => prepared.apply_l(&zeta, DEFAULT_STEP)?,
            (None, false) => prepared.cauchy(&zeta)?,
        };
        let mut r = function_inputs(Record::new(operation), f, w, lambda)
            .input("zeta", cvec_value(&point))
            .value(value)
            .quadrature(q);
        if let Some(mu) = component {
            r = r.input("mu", mu);
        }
        records.push(r);
    }
    Ok(records)
}

fn default_fiber_points() -> Vec<String> {
    ["0.3", "0.6", "0.9", "1.2", "1.5"].iter().map(|s| format!("curve:{s}")).collect()
}

fn invert(w: &str, lambdas: &str, zs: &[String], profile: bool, q: &QuadratureSpec) -> Result<Vec<Record>, CliError> {
    let lambdas = input(points::parse_list(lambdas, points::parse_u32))?;
    let zs = if zs.is_empty() { default_fiber_points() } else { zs.to_vec() };
    let z_points = zs
        .iter()
        .map(|s| points::parse_point(s))
        .collect::<Result<Vec<CVec3>, String>>()
        .map_err(CliError::Input)?;
    let mut records = Vec::new();
    for &lambda in &lambdas {
        let f = TestFunction::matrix_coefficient(input(points::parse_point(w))?, lambda)?;
        if profile {
            records.extend(fiber_profile(&f, w, lambda, &zs[0], &z_points[0], q)?);
            continue;
        }
        let report = inversion_pipeline(&f, &z_points, q)?;
        for (label, p) in zs.iter().zip(&report.points) {
            let mut r = Record::new("inverse_transform")
                .input("w", w)
                .input("lambda", lambda)
                .input("z", label.as_str())
                .value(p.reconstructed)
                .quadrature(q)
                .tail_bound(p.tail_bound);
            if let Some(o) = p.original {
                r = r.extra("f_re", o.re).extra("f_im", o.im);
            }
            if let Some(ratio) = p.ratio {
                r = r.extra("ratio_re", ratio.re).extra("ratio_im", ratio.im);
            }
            records.push(r);
        }
        let mut summary = Record::new("inversion_summary")
            .input("w", w)
            .input("lambda", lambda)
            .quadrature(q)
            .extra("epsilon", report.epsilon);
        if let Some(m) = report.mean_ratio {
            summary = summary.value(m);
        }
        if let Some(cv) = report.coefficient_of_variation {
            summary = summary.extra("coefficient_of_variation", cv);
        }
        records.push(summary);
    }
    Ok(records)
}

/// |(L f^)(zeta(t))| at the fiber quadrature nodes through `z`.
fn fiber_profile(
    f: &TestFunction,
    w: &str,
    lambda: u32,
    label: &str,
    z: &CVec3,
    q: &QuadratureSpec,
) -> Result<Vec<Record>, CliError> {
    if !horocauchy::hyperboloid::in_d_plus(z).map_err(TransformError::from)? {
        return Err(CliError::Domain("z is not in D+".into()));
    }
    let prepared = PreparedFunction::new(f, q)?;
    let curve = FiberCurve::new(z)?;
    let epsilon = euler_sign();
    let rule = CompositeRule::symmetric(q.fiber_t_max, q.fiber_n);
    let mut records = Vec::with_capacity(rule.nodes.len());
    for &t in &rule.nodes {
        let zeta = HoroPoint::interior(curve.at(t)).map_err(TransformError::from)?;
        let (v, d) = prepared.cauchy_with_euler(&zeta, DEFAULT_STEP)?;
        let integrand = d * epsilon - v * 0.5;
        records.push(
            Record::new("fiber_profile")
                .input("w", w)
                .input("lambda", lambda)
                .input("z", label)
                .value(integrand)
                .quadrature(q)
                .extra("t", t)
                .extra("modulus", integrand.norm()),
        );
    }
    Ok(records)
}

fn verify(names: &[String], seed: u64, q: &QuadratureSpec) -> Result<(Vec<Record>, Result<(), CliError>), CliError> {
    let names: Vec<&str> = if names.iter().any(|n| n == "all") {
        BATTERIES.to_vec()
    } else {
        names.iter().map(String::as_str).collect()
    };
    let mut records = Vec::new();
    let mut failed = Vec::new();
    for name in names {
        let report = run_battery(name, seed, q)?;
        if !report.passed() {
            failed.push(name);
        }
        for c in &report.checks {
            records.push(
                Record::new("verify")
                    .input("battery", name)
                    .input("seed", seed)
                    .real_value(Some(c.value))
                    .extra("label", c.label.as_str())
                    .extra("relation", c.relation)
                    .extra("threshold", c.threshold)
                    .extra("passed", c.passed),
            );
        }
    }
    let verdict = if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!("failing batteries: {}", failed.join(", "))))
    };
    Ok((records, verdict))
}
