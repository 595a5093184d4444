//! Verification batteries: seeded, deterministic checks of the invariants of
//! the lattice engine, the hyperboloid geometry and the transform pipeline.
//!
//! Every battery returns a [`BatteryReport`] of individual [`Check`]s and,
//! for quadrature-dependent batteries, the raw [`Observation`]s that
//! [`compare_resolutions`] uses to measure sensitivity to the grid.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::hyperboloid::{
    d_plus_curve, param_x, sample_d_plus_point, sample_group_word, sample_interior_horopoint, zeta0, CVec3,
    GroupElement, HoroPoint, OrbitType, RVec3,
};
use crate::quadrature::{uniform_points, QuadratureSpec, XGrid};
use crate::rootlattice::{fixtures, in_closed_cone, LatticeError, RootDatum, RootKind, WeightVector};
use crate::transform::{
    cauchy_kernel, inversion_pipeline, schur_matrix, sign_calibration, FiberCurve, PreparedFunction, TestFunction,
    TransformError, DEFAULT_STEP,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VerifyError {
    #[error("unknown battery {0:?}")]
    UnknownBattery(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub const BATTERIES: [&str; 9] = [
    "cone-lattice",
    "no-real-points",
    "kernel-series",
    "schur",
    "measure-invariance",
    "fiber-identities",
    "inversion",
    "l-eigenvalue",
    "self-consistency",
];

/// One assertion: `value <relation> threshold`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub value: f64,
    pub relation: &'static str,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    pub fn below(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(label, value, "<", threshold, value < threshold)
    }

    pub fn at_most(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(label, value, "<=", threshold, value <= threshold)
    }

    pub fn above(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(label, value, ">", threshold, value > threshold)
    }

    pub fn at_least(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self::new(label, value, ">=", threshold, value >= threshold)
    }

    /// A count of violations that must be zero.
    pub fn none(label: impl Into<String>, violations: usize) -> Self {
        Self::new(label, violations as f64, "==", 0.0, violations == 0)
    }

    pub fn holds(label: impl Into<String>, ok: bool) -> Self {
        Self::new(label, f64::from(u8::from(ok)), "==", 1.0, ok)
    }

    fn new(label: impl Into<String>, value: f64, relation: &'static str, threshold: f64, passed: bool) -> Self {
        Check {
            label: label.into(),
            value,
            relation,
            threshold,
            passed,
        }
    }
}

/// A quadrature-derived value; `scale` is the magnitude relative to which
/// changes are measured.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Observation {
    pub label: String,
    pub value: Complex64,
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub battery: String,
    pub checks: Vec<Check>,
    pub observations: Vec<Observation>,
}

impl BatteryReport {
    fn new(battery: &str) -> Self {
        BatteryReport {
            battery: battery.to_string(),
            checks: Vec::new(),
            observations: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn observe(&mut self, label: impl Into<String>, value: Complex64, scale: f64) {
        self.observations.push(Observation {
            label: label.into(),
            value,
            scale,
        });
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs a battery by name.
pub fn run_battery(name: &str, seed: u64, q: &QuadratureSpec) -> Result<BatteryReport, VerifyError> {
    match name {
        "cone-lattice" => cone_lattice(),
        "no-real-points" => Ok(no_real_points(seed, &GridSize::default())),
        "kernel-series" => Ok(kernel_series(seed, 10_000)),
        "schur" => schur(seed, q),
        "measure-invariance" => measure_invariance(seed, q),
        "fiber-identities" => fiber_identities(seed),
        "inversion" => inversion(seed, q),
        "l-eigenvalue" => l_eigenvalue(seed, q),
        "self-consistency" => self_consistency(seed, q),
        other => Err(VerifyError::UnknownBattery(other.to_string())),
    }
}

fn all_nonnegative(k: &[crate::rootlattice::Q]) -> bool {
    k.iter().all(|v| !v.is_negative())
}

fn noncompact_multiplicity(d: &RootDatum) -> u32 {
    d.roots()
        .iter()
        .find(|r| r.kind == RootKind::Noncompact)
        .map(|r| r.multiplicity)
        .unwrap_or(1)
}

/// Exhaustive lattice checks on every shipped datum over `|k_i| <= 5`.
pub fn cone_lattice() -> Result<BatteryReport, VerifyError> {
    let mut report = BatteryReport::new("cone-lattice");
    for d in fixtures::all() {
        let name = d.name().to_string();
        let weights = d.enumerate_weights(5)?;
        let (mut ge0, mut chain, mut equal_rank, mut rank_one) = (0, 0, 0, 0);
        let mut equal_rank_examples = Vec::new();
        let m = noncompact_multiplicity(&d);
        for lambda in &weights {
            let class = d.classify(lambda)?;
            let k = d.omega_coordinates(lambda)?;
            if class.lambda_ge0 != all_nonnegative(&k) {
                ge0 += 1;
            }
            if !class.respects_inclusions() || (class.lambda_2 && !class.lambda_gt0) {
                chain += 1;
            }
            if d.sigma_plus().is_some() && class.lambda_gt0 && !class.lambda_2 {
                equal_rank += 1;
                if equal_rank_examples.len() < 3 {
                    equal_rank_examples.push(format!("({})", k.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")));
                }
            }
            if d.rank() == 1 {
                let threshold = 1 + i64::from(m / 2);
                let expected = k[0].is_integer() && k[0] >= crate::rootlattice::q(threshold, 1);
                if class.lambda_2 != expected {
                    rank_one += 1;
                }
            }
        }
        report.checks.push(Check::none(
            format!("{name}: Lambda_>=0 = nonnegative integer span of omega_i ({} weights)", weights.len()),
            ge0,
        ));
        report.checks.push(Check::none(
            format!("{name}: Lambda_1 <= Lambda_2 <= Lambda_>0, Lambda_c <= Lambda_2, Lambda_>0 <= Lambda_>=0"),
            chain,
        ));
        if d.sigma_plus().is_some() {
            let suffix = if equal_rank_examples.is_empty() {
                String::new()
            } else {
                format!("; omega-coordinates outside Lambda_2: {}", equal_rank_examples.join(" "))
            };
            report.checks.push(Check::none(
                format!("{name}: equal rank, Lambda_>0 <= Lambda_2{suffix}"),
                equal_rank,
            ));
        }
        if d.rank() == 1 {
            let mut extended = 0;
            for k in 1..=10i64 {
                let c = d.classify(&WeightVector::from_ints(&[k]))?;
                if c.lambda_2 != (k > i64::from(m / 2)) {
                    extended += 1;
                }
            }
            report.checks.push(Check::none(
                format!("{name}: Lambda_2 = (Z_>0 + {}) omega on |k| <= 5 and k in 1..=10", m / 2),
                rank_one + extended,
            ));
        }
        let gens = d.cone_generators();
        let mut positivity = 0;
        for om in d.fundamental_weights()? {
            let vals: Vec<_> = gens.iter().map(|g| d.inner(&om, g)).collect();
            if !(vals.iter().all(|v| !v.is_negative()) && vals.iter().any(|v| v.is_positive())) {
                positivity += 1;
            }
        }
        report.checks.push(Check::none(format!("{name}: omega_i positive on the open cone"), positivity));
        let orbit = d.long_coroot_orbit();
        let hull = gens.iter().all(|g| in_closed_cone(&orbit, g)) && orbit.iter().all(|o| in_closed_cone(&gens, o));
        report
            .checks
            .push(Check::holds(format!("{name}: cone = hull of the W_k-orbit of a long coroot"), hull));
        let mut scaling = 0;
        for lambda in weights.iter().filter(|w| !w.is_zero()) {
            let a = d.classify(lambda)?;
            let b = d.classify(&lambda.scale(&crate::rootlattice::q(7, 3)))?;
            if a.lambda_0 != b.lambda_0 || a.lambda_ge0 != b.lambda_ge0 {
                scaling += 1;
            }
        }
        report
            .checks
            .push(Check::none(format!("{name}: cone conditions invariant under scaling by 7/3"), scaling));
        let zero = d.classify(&WeightVector::zero(d.rank()))?;
        report.checks.push(Check::holds(
            format!("{name}: lambda = 0 lies in none of Lambda_>0, Lambda_1, Lambda_2, Lambda_c"),
            !(zero.lambda_gt0 || zero.lambda_1 || zero.lambda_2 || zero.lambda_c),
        ));
    }
    Ok(report)
}

/// Resolution of the uniform grid used by [`no_real_points`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSize {
    pub t_max: f64,
    pub n_t: usize,
    pub n_theta: usize,
}

impl Default for GridSize {
    fn default() -> Self {
        GridSize {
            t_max: 6.0,
            n_t: 480,
            n_theta: 256,
        }
    }
}

impl GridSize {
    pub fn doubled(&self) -> Self {
        GridSize {
            n_t: 2 * self.n_t,
            n_theta: 2 * self.n_theta,
            ..*self
        }
    }
}

fn min_pairing(zeta: &CVec3, grid: &GridSize) -> f64 {
    uniform_points(grid.t_max, grid.n_t, grid.n_theta)
        .map(|x| zeta.pair_real(&x).norm())
        .fold(f64::INFINITY, f64::min)
}

/// `|<x, zeta>| > 1` on a grid for 50 interior horopoints, and the
/// boundary behaviour at `zeta0`.
pub fn no_real_points(seed: u64, grid: &GridSize) -> BatteryReport {
    let mut report = BatteryReport::new("no-real-points");
    let mut rng = rng_for(seed, 2);
    let mut overall = f64::INFINITY;
    let mut reclassified = 0;
    for i in 0..50 {
        let zeta = sample_interior_horopoint(&mut rng, None);
        let m = min_pairing(zeta.zeta(), grid);
        overall = overall.min(m);
        report.observe(format!("min |<x, zeta_{i}>|"), Complex64::new(m, 0.0), m);
        let g = sample_group_word(&mut rng).element();
        if HoroPoint::classify(g.act(zeta.zeta())).map(|h| h.class()) != Ok(zeta.class()) {
            reclassified += 1;
        }
    }
    report
        .checks
        .push(Check::above("interior horopoints: min |<x, zeta>| over the grid", overall, 1.0));
    report
        .checks
        .push(Check::none("interior class preserved under sampled g", reclassified));
    let b = min_pairing(&zeta0(), grid);
    report.observe("min |<x, zeta0>|", Complex64::new(b, 0.0), b);
    report
        .checks
        .push(Check::at_least("boundary zeta0: min |<x, zeta0>|", b, 1.0 - 1e-10));
    report.checks.push(Check::below("boundary zeta0: min |<x, zeta0>|", b, 1.0 + 1e-3));
    report
}

/// `|K - sum_{l <= 40} <x, zeta>^-l|` against the geometric tail bound.
pub fn kernel_series(seed: u64, pairs: usize) -> BatteryReport {
    let mut report = BatteryReport::new("kernel-series");
    let mut rng = rng_for(seed, 3);
    let mut violations = 0;
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..pairs {
        let zeta = sample_interior_horopoint(&mut rng, None);
        let x = param_x(rng.gen_range(-6.0..6.0), rng.gen_range(0.0..2.0 * PI));
        let k = match cauchy_kernel(&zeta, &x) {
            Ok(k) => k,
            Err(_) => {
                violations += 1;
                continue;
            }
        };
        let inv = zeta.zeta().pair_real(x.vec()).inv();
        let (mut term, mut sum, mut abs_sum) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), 0.0);
        for _ in 0..40 {
            term *= inv;
            sum += term;
            abs_sum += term.norm();
        }
        let r = inv.norm();
        let bound = r.powi(41) / (1.0 - r);
        // the bound is attained when <x, zeta> is real, so rounding in K - S
        // is allowed for explicitly
        let slack = 64.0 * f64::EPSILON * (k.norm() + abs_sum);
        let err = (k - sum).norm();
        if err > bound + slack {
            violations += 1;
        }
        if bound > 0.0 {
            worst_ratio = worst_ratio.max(err / (bound + slack));
        }
    }
    report.checks.push(Check::none(
        format!("{pairs} pairs within the geometric tail bound (worst error/bound = {worst_ratio:.3})"),
        violations,
    ));
    report
}

/// A real-valued test function on the hyperboloid.
pub type RealFunction = fn(&RVec3) -> f64;

/// The three integrands of the invariance battery.
pub fn invariance_functions() -> [(&'static str, RealFunction); 3] {
    fn rational(x: &RVec3) -> f64 {
        // |<x, 2 zeta0>|^2 = 4 (x1^2 + x2^2)
        let m = 4.0 * (x.0[0] * x.0[0] + x.0[1] * x.0[1]);
        1.0 / (m * m)
    }
    fn gaussian(x: &RVec3) -> f64 {
        (-(x.0[0] * x.0[0] + x.0[1] * x.0[1] + x.0[2] * x.0[2])).exp()
    }
    fn anisotropic(x: &RVec3) -> f64 {
        (-(x.0[0] * x.0[0] + 2.0 * x.0[1] * x.0[1] + 3.0 * x.0[2] * x.0[2]) / 2.0).exp() * (1.0 + 0.5 * x.0[0])
    }
    [
        ("|<x, 2 zeta0>|^-4", rational),
        ("exp(-|x|^2)", gaussian),
        ("anisotropic gaussian", anisotropic),
    ]
}

/// `int f(g x) dx = int f dx` for 10 sampled words and 3 functions.
pub fn measure_invariance(seed: u64, q: &QuadratureSpec) -> Result<BatteryReport, VerifyError> {
    let mut report = BatteryReport::new("measure-invariance");
    let grid = XGrid::new(q).map_err(TransformError::from)?;
    let mut rng = rng_for(seed, 4);
    let words: Vec<GroupElement> = (0..10).map(|_| sample_group_word(&mut rng).element()).collect();
    for (name, f) in invariance_functions() {
        let base = grid.integrate(f);
        report.observe(format!("int {name}"), Complex64::new(base, 0.0), base.abs());
        let mut worst: f64 = 0.0;
        for (i, g) in words.iter().enumerate() {
            let moved = grid.integrate(|x| f(&g.act_real(x)));
            report.observe(format!("int {name} o g_{i}"), Complex64::new(moved, 0.0), base.abs());
            worst = worst.max((moved - base).abs() / base.abs());
        }
        report
            .checks
            .push(Check::below(format!("{name}: max relative change over 10 words"), worst, 1e-8));
    }
    Ok(report)
}

/// The Schur matrices for 3 sampled pairs of horopoints of opposite orbit
/// types; for a pair of the same type every entry vanishes.
pub fn schur(seed: u64, q: &QuadratureSpec) -> Result<BatteryReport, VerifyError> {
    let mut report = BatteryReport::new("schur");
    let mut rng = rng_for(seed, 5);
    for pair in 0..3 {
        let z1 = sample_interior_horopoint(&mut rng, Some(OrbitType::Zeta0));
        let z2 = sample_interior_horopoint(&mut rng, Some(OrbitType::Conjugate));
        let m = schur_matrix(4, &z1, &z2, q)?;
        let mt = schur_matrix(4, &z2, &z1, q)?;
        let max = m.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        let (mut off, mut diag_min, mut asym) = (0.0f64, f64::INFINITY, 0.0f64);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                report.observe(format!("pair {pair}: M[{}][{}]", i + 1, j + 1), *v, max);
                if i == j {
                    diag_min = diag_min.min(v.norm());
                } else {
                    off = off.max(v.norm());
                }
                asym = asym.max((v - mt[j][i]).norm());
            }
        }
        report.checks.push(Check::below(
            format!("pair {pair}: max off-diagonal / max entry"),
            off / max,
            1e-7,
        ));
        report.checks.push(Check::above(
            format!("pair {pair}: min diagonal / max entry"),
            diag_min / max,
            1e-7,
        ));
        report.checks.push(Check::at_most(
            format!("pair {pair}: |M(z1,z2)[l][m] - M(z2,z1)[m][l]| / max entry"),
            asym / max,
            1e-12,
        ));
    }
    Ok(report)
}

/// `Delta(zeta(t)) = 0` and `<z, zeta(t)> = 1` for 20 points of `D+` and 200
/// values of `t`.
pub fn fiber_identities(seed: u64) -> Result<BatteryReport, VerifyError> {
    let mut report = BatteryReport::new("fiber-identities");
    let mut rng = rng_for(seed, 6);
    let (mut worst_delta, mut worst_pair) = (0.0f64, 0.0f64);
    let mut interior_fibers = 0;
    for _ in 0..20 {
        let z = sample_d_plus_point(&mut rng);
        let curve = FiberCurve::new(&z)?;
        let mut interior = true;
        for k in 0..200 {
            let t = -14.0 + 28.0 * k as f64 / 199.0;
            let zeta = curve.at(t);
            let n = zeta.norm();
            worst_delta = worst_delta.max(zeta.delta().norm() / (n * n));
            worst_pair = worst_pair.max((z.bilinear(&zeta) - 1.0).norm() / (z.norm() * n).max(1.0));
            interior &= HoroPoint::classify(zeta).map(|h| h.is_interior()).unwrap_or(false);
        }
        interior_fibers += usize::from(interior);
    }
    report
        .checks
        .push(Check::at_most("max |Delta(zeta(t))| / |zeta|^2", worst_delta, 1e-10));
    report.checks.push(Check::at_most(
        "max |<z, zeta(t)> - 1| / max(1, |z||zeta|)",
        worst_pair,
        1e-10,
    ));
    report.observe(
        "fibers lying in the interior of Xi+ (of 20)",
        Complex64::new(interior_fibers as f64, 0.0),
        20.0,
    );
    Ok(report)
}

/// `L f^ = (lambda - 1/2) f^` for `f = <x, 2 zeta0>^-lambda`, `lambda` in
/// `{2, 3, 4}`, at 5 sampled interior points each.
pub fn l_eigenvalue(seed: u64, q: &QuadratureSpec) -> Result<BatteryReport, VerifyError> {
    let mut report = BatteryReport::new("l-eigenvalue");
    let cal = sign_calibration();
    report.observe("calibrated sign", Complex64::new(cal.epsilon, 0.0), 1.0);
    report.observe("calibration Euler ratio", cal.euler_ratio, 2.0);
    let mut rng = rng_for(seed, 7);
    let points: Vec<HoroPoint> = (0..5)
        .map(|_| sample_interior_horopoint(&mut rng, Some(OrbitType::Conjugate)))
        .collect();
    for lambda in 2..=4u32 {
        let f = TestFunction::matrix_coefficient(2.0 * zeta0(), lambda)?;
        let prepared = PreparedFunction::new(&f, q)?;
        let expected = f64::from(lambda) - 0.5;
        let mut worst: f64 = 0.0;
        for (i, zeta) in points.iter().enumerate() {
            let phi = prepared.cauchy(zeta)?;
            let l = prepared.apply_l(zeta, DEFAULT_STEP)?;
            worst = worst.max((l - phi * expected).norm() / phi.norm());
            report.observe(format!("lambda {lambda}, point {i}: f^"), phi, phi.norm());
            report.observe(format!("lambda {lambda}, point {i}: L f^ / f^"), l / phi, expected);
        }
        report.checks.push(Check::below(
            format!("lambda {lambda}: max |L f^ - {expected} f^| / |f^| over 5 points"),
            worst,
            1e-5,
        ));
    }
    Ok(report)
}

/// The evaluation points of the inversion battery, `(cosh s, i sinh s, 0)`.
pub fn inversion_points() -> Vec<CVec3> {
    [0.3, 0.6, 0.9, 1.2, 1.5].iter().map(|&s| d_plus_curve(s)).collect()
}

/// `(L f^)^v / f` across 5 points of `D+`, for `lambda` in `{2, 3}` and two
/// choices of `w`; `lambda = 1` must be rejected.
pub fn inversion(seed: u64, q: &QuadratureSpec) -> Result<BatteryReport, VerifyError> {
    let mut report = BatteryReport::new("inversion");
    let mut rng = rng_for(seed, 8);
    let generic = *sample_interior_horopoint(&mut rng, Some(OrbitType::Zeta0)).zeta();
    let zs = inversion_points();
    for (wname, w) in [("w = 2 zeta0", 2.0 * zeta0()), ("generic w", generic)] {
        let mut means = Vec::new();
        for lambda in [2u32, 3] {
            let f = TestFunction::matrix_coefficient(w, lambda)?;
            let r = inversion_pipeline(&f, &zs, q)?;
            for (i, p) in r.points.iter().enumerate() {
                let ratio = p.ratio.unwrap_or(Complex64::zero());
                report.observe(format!("{wname}, lambda {lambda}, z_{i}: R/f"), ratio, ratio.norm());
            }
            let mean = r.mean_ratio.unwrap_or(Complex64::zero());
            report.observe(format!("{wname}, lambda {lambda}: mean R/f"), mean, mean.norm());
            report.checks.push(Check::below(
                format!("{wname}, lambda {lambda}: coefficient of variation of R/f over 5 points (mean {:.12})", mean.re),
                r.coefficient_of_variation.unwrap_or(f64::INFINITY),
                1e-4,
            ));
            means.push(mean);
        }
        report.checks.push(Check::below(
            format!("{wname}: |mean(lambda 2) - mean(lambda 3)| / |mean(lambda 2)|"),
            (means[0] - means[1]).norm() / means[0].norm(),
            1e-3,
        ));
    }
    let f1 = TestFunction::matrix_coefficient(2.0 * zeta0(), 1)?;
    let diverges = matches!(inversion_pipeline(&f1, &zs, q), Err(TransformError::Divergence(_)));
    report
        .checks
        .push(Check::holds("lambda 1: divergence error raised", diverges));
    report.observe(
        "reference 4 pi^2",
        Complex64::new(4.0 * PI * PI, 0.0),
        4.0 * PI * PI,
    );
    Ok(report)
}

/// Compares the observations of two runs of a battery. `values` that
/// differ by more than `tol * scale` fail.
pub fn compare_resolutions(base: &BatteryReport, fine: &BatteryReport, tol: f64) -> Vec<Check> {
    let mut worst: f64 = 0.0;
    let mut worst_label = String::new();
    let mut mismatched = 0;
    for (a, b) in base.observations.iter().zip(&fine.observations) {
        if a.label != b.label {
            mismatched += 1;
            continue;
        }
        let scale = a.scale.max(b.scale);
        let change = if scale > 0.0 { (a.value - b.value).norm() / scale } else { 0.0 };
        if change > worst {
            worst = change;
            worst_label = a.label.clone();
        }
    }
    if base.observations.len() != fine.observations.len() {
        mismatched += 1;
    }
    let mut checks = vec![Check::below(
        format!(
            "{}: max relative change of {} values under doubling{}",
            base.battery,
            base.observations.len(),
            if worst_label.is_empty() { String::new() } else { format!(" (at {worst_label})") }
        ),
        worst,
        tol,
    )];
    if mismatched > 0 {
        checks.push(Check::none(format!("{}: observation sets align", base.battery), mismatched));
    }
    checks
}

/// Doubles every resolution parameter and compares the quadrature-derived
/// values of the batteries that depend on it.
pub fn self_consistency(seed: u64, q: &QuadratureSpec) -> Result<BatteryReport, VerifyError> {
    let mut report = BatteryReport::new("self-consistency");
    let fine = q.doubled();
    let grid = GridSize::default();
    let coarse_grid = no_real_points(seed, &grid);
    let fine_grid = no_real_points(seed, &grid.doubled());
    for c in &fine_grid.checks {
        report.checks.push(Check { label: format!("doubled grid: {}", c.label), ..c.clone() });
    }
    report.observations.extend(coarse_grid.observations.iter().zip(&fine_grid.observations).map(|(a, b)| {
        Observation {
            label: format!("change in {}", a.label),
            value: b.value - a.value,
            scale: a.scale,
        }
    }));
    for (base, fine, tol) in [
        (measure_invariance(seed, q)?, measure_invariance(seed, &fine)?, 1e-8),
        (schur(seed, q)?, schur(seed, &fine)?, 1e-8),
        (l_eigenvalue(seed, q)?, l_eigenvalue(seed, &fine)?, 1e-8),
        (inversion(seed, q)?, inversion(seed, &fine)?, 1e-5),
    ] {
        report.checks.extend(compare_resolutions(&base, &fine, tol));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_relations() {
        assert!(Check::below("a", 1.0, 2.0).passed);
        assert!(!Check::below("a", 2.0, 2.0).passed);
        assert!(Check::at_most("a", 2.0, 2.0).passed);
        assert!(!Check::above("a", 1.0, 1.0).passed);
        assert!(Check::none("a", 0).passed && !Check::none("a", 1).passed);
    }

    #[test]
    fn unknown_battery() {
        assert!(matches!(
            run_battery("nope", 0, &QuadratureSpec::default()),
            Err(VerifyError::UnknownBattery(_))
        ));
    }

    #[test]
    fn small_batteries_pass() {
        assert!(kernel_series(1, 500).passed());
        assert!(fiber_identities(1).unwrap().passed());
        let small = GridSize { n_t: 61, n_theta: 32, ..Default::default() };
        assert!(no_real_points(1, &small).passed());
    }

    #[test]
    fn comparison_flags_changes() {
        let mut a = BatteryReport::new("x");
        a.observe("v", Complex64::new(1.0, 0.0), 1.0);
        let mut b = a.clone();
        assert!(compare_resolutions(&a, &b, 1e-8)[0].passed);
        b.observations[0].value = Complex64::new(1.0 + 1e-6, 0.0);
        assert!(!compare_resolutions(&a, &b, 1e-8)[0].passed);
    }
}
