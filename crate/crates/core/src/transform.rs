//! The horospherical Cauchy transform on the hyperboloid, its spherical
//! Fourier components, the invariant operator `L`, and the inversion along
//! the fibers `S_R(z)`.
//!
//! All sums run sequentially in grid order, so every value is a
//! deterministic function of its inputs and the [`QuadratureSpec`].

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::hyperboloid::{
    in_d_plus, zeta0, CVec3, GeometryError, HoroPoint, HyperboloidPoint, OrbitType, RVec3,
};
use crate::quadrature::{CompositeRule, QuadratureError, QuadratureSpec, XGrid};
use crate::rootlattice::{fixtures, WeightVector};

/// Pairings closer than this to 1 are reported as kernel singularities.
pub const SINGULARITY_TOL: f64 = 1e-9;
/// `|r|` at or below this makes the fiber parametrization degenerate.
pub const DEGENERATE_R: f64 = 1e-6;
/// A fiber integral whose end panels carry more than this fraction of the
/// total is reported as divergent.
pub const TAIL_FRACTION: f64 = 1e-3;
/// Default step of the Euler stencil in [`apply_l`].
pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransformError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("Cauchy kernel singular: |<zeta, x> - 1| = {distance:e}")]
    Singularity { distance: f64 },
    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("fiber integral diverges: {0}")]
    Divergence(String),
    #[error("degenerate fiber: |r| = {r:e} <= {DEGENERATE_R:e}")]
    DegenerateFiber { r: f64 },
}

type CustomFn = Arc<dyn Fn(&RVec3) -> Complex64 + Send + Sync>;

/// A function on `X` to be transformed.
#[derive(Clone)]
pub enum TestFunction {
    Zero,
    /// `f(x) = <x, w>^(-lambda)` with `w` interior.
    MatrixCoefficient { w: HoroPoint, lambda: u32 },
    Custom { label: String, f: CustomFn },
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Zero => write!(fm, "Zero"),
            TestFunction::MatrixCoefficient { w, lambda } => {
                write!(fm, "MatrixCoefficient {{ w: {:?}, lambda: {lambda} }}", w.zeta())
            }
            TestFunction::Custom { label, .. } => write!(fm, "Custom({label})"),
        }
    }
}

impl TestFunction {
    pub fn matrix_coefficient(w: CVec3, lambda: u32) -> Result<Self, TransformError> {
        if lambda == 0 {
            return Err(TransformError::Precondition("lambda must be a positive integer".into()));
        }
        let w = HoroPoint::interior(w)?;
        Ok(TestFunction::MatrixCoefficient { w, lambda })
    }

    pub fn custom(label: impl Into<String>, f: impl Fn(&RVec3) -> Complex64 + Send + Sync + 'static) -> Self {
        TestFunction::Custom {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, x: &RVec3) -> Complex64 {
        match self {
            TestFunction::Zero => Complex64::new(0.0, 0.0),
            TestFunction::MatrixCoefficient { w, lambda } => w.zeta().pair_real(x).inv().powu(*lambda),
            TestFunction::Custom { f, .. } => f(x),
        }
    }

    /// Holomorphic extension to `X_C`, where one is known.
    pub fn eval_complex(&self, z: &CVec3) -> Option<Complex64> {
        match self {
            TestFunction::Zero => Some(Complex64::new(0.0, 0.0)),
            TestFunction::MatrixCoefficient { w, lambda } => Some(z.bilinear(w.zeta()).inv().powu(*lambda)),
            TestFunction::Custom { .. } => None,
        }
    }

    pub fn lambda(&self) -> Option<u32> {
        match self {
            TestFunction::MatrixCoefficient { lambda, .. } => Some(*lambda),
            _ => None,
        }
    }
}

/// A value of `f^` or of one of its components at a horopoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransformSample {
    pub zeta: CVec3,
    pub value: Complex64,
    pub lambda_tag: Option<u32>,
}

/// `1 / (<zeta, x> - 1)` for an interior `zeta`.
pub fn cauchy_kernel(zeta: &HoroPoint, x: &HyperboloidPoint) -> Result<Complex64, TransformError> {
    require_interior(zeta)?;
    kernel_value(zeta.zeta().pair_real(x.vec()))
}

fn kernel_value(p: Complex64) -> Result<Complex64, TransformError> {
    let d = p - 1.0;
    if d.norm() < SINGULARITY_TOL {
        return Err(TransformError::Singularity { distance: d.norm() });
    }
    Ok(d.inv())
}

fn require_interior(zeta: &HoroPoint) -> Result<(), TransformError> {
    if !zeta.is_interior() {
        return Err(GeometryError::NotInterior {
            class: zeta.class(),
            delta_re: zeta.zeta().re().delta(),
        }
        .into());
    }
    Ok(())
}

/// `f` tabulated on an [`XGrid`] with the quadrature weights folded in, so
/// repeated transforms of the same function cost one pass over the grid.
/// Coordinates and weighted values are stored column-wise.
#[derive(Debug, Clone)]
pub struct PreparedFunction {
    x: [Vec<f64>; 3],
    fw_re: Vec<f64>,
    fw_im: Vec<f64>,
    quadrature: QuadratureSpec,
}

impl PreparedFunction {
    pub fn new(f: &TestFunction, q: &QuadratureSpec) -> Result<Self, TransformError> {
        let grid = XGrid::new(q)?;
        let n = grid.len();
        let mut x = [Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n)];
        let (mut fw_re, mut fw_im) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for (p, w) in grid.points.iter().zip(&grid.weights) {
            let v = f.eval(p) * *w;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(TransformError::NonFinite { context: "test function" });
            }
            for k in 0..3 {
                x[k].push(p.0[k]);
            }
            fw_re.push(v.re);
            fw_im.push(v.im);
        }
        Ok(PreparedFunction {
            x,
            fw_re,
            fw_im,
            quadrature: *q,
        })
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quadrature
    }

    /// `f^(zeta)`.
    pub fn cauchy(&self, zeta: &HoroPoint) -> Result<Complex64, TransformError> {
        require_interior(zeta)?;
        let [v] = self.cauchy_scaled(zeta.zeta(), [1.0])?;
        Ok(v)
    }

    /// `f^(c zeta)` for each scale `c`, in a single pass over the grid.
    fn cauchy_scaled<const N: usize>(&self, zeta: &CVec3, scales: [f64; N]) -> Result<[Complex64; N], TransformError> {
        const LANES: usize = 4;
        let [a, b, c] = zeta.0;
        let mut re = [[0.0; LANES]; N];
        let mut im = [[0.0; LANES]; N];
        let mut closest = [f64::INFINITY; LANES];
        let [x1, x2, x3] = &self.x;
        for j in 0..self.fw_re.len() {
            let l = j % LANES;
            let pr = a.re * x1[j] + b.re * x2[j] - c.re * x3[j];
            let pi = a.im * x1[j] + b.im * x2[j] - c.im * x3[j];
            let (fr, fi) = (self.fw_re[j], self.fw_im[j]);
            for k in 0..N {
                let dr = scales[k] * pr - 1.0;
                let di = scales[k] * pi;
                let m = dr * dr + di * di;
                closest[l] = closest[l].min(m);
                let inv = 1.0 / m;
                re[k][l] += (fr * dr + fi * di) * inv;
                im[k][l] += (fi * dr - fr * di) * inv;
            }
        }
        let closest = closest.iter().fold(f64::INFINITY, |m, &v| m.min(v));
        let re = re.map(|lanes| lanes.iter().sum::<f64>());
        let im = im.map(|lanes| lanes.iter().sum::<f64>());
        if closest < SINGULARITY_TOL * SINGULARITY_TOL {
            return Err(TransformError::Singularity {
                distance: closest.sqrt(),
            });
        }
        let mut out = [Complex64::new(0.0, 0.0); N];
        for k in 0..N {
            out[k] = finite(Complex64::new(re[k], im[k]), "Cauchy transform")?;
        }
        Ok(out)
    }

    /// `(f^(zeta), sum_j zeta_j d_j f^(zeta))`, sharing one grid pass between
    /// the value and the stencil of [`euler_derivative`].
    pub fn cauchy_with_euler(&self, zeta: &HoroPoint, h: f64) -> Result<(Complex64, Complex64), TransformError> {
        check_stencil(zeta, h)?;
        let [v, m2, m1, p1, p2] =
            self.cauchy_scaled(zeta.zeta(), [1.0, 1.0 - 2.0 * h, 1.0 - h, 1.0 + h, 1.0 + 2.0 * h])?;
        let d = (m2 - m1 * 8.0 + p1 * 8.0 - p2) / (12.0 * h);
        Ok((v, finite(d, "Euler derivative")?))
    }

    /// `L f^` at `zeta`.
    pub fn apply_l(&self, zeta: &HoroPoint, h: f64) -> Result<Complex64, TransformError> {
        let (v, d) = self.cauchy_with_euler(zeta, h)?;
        Ok(d * euler_sign() - v * 0.5)
    }

    /// `f^_lambda(zeta) = int f(x) <x, zeta>^(-lambda) dx`.
    pub fn fourier_component(&self, zeta: &HoroPoint, lambda: u32) -> Result<Complex64, TransformError> {
        require_interior(zeta)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..self.fw_re.len() {
            let x = RVec3([self.x[0][j], self.x[1][j], self.x[2][j]]);
            acc += Complex64::new(self.fw_re[j], self.fw_im[j]) * zeta.zeta().pair_real(&x).inv().powu(lambda);
        }
        finite(acc, "Fourier component")
    }
}

fn finite(v: Complex64, context: &'static str) -> Result<Complex64, TransformError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(TransformError::NonFinite { context })
    }
}

pub fn cauchy_transform(f: &TestFunction, zeta: &HoroPoint, q: &QuadratureSpec) -> Result<Complex64, TransformError> {
    require_interior(zeta)?;
    if matches!(f, TestFunction::Zero) {
        q.validate()?;
        return Ok(Complex64::new(0.0, 0.0));
    }
    PreparedFunction::new(f, q)?.cauchy(zeta)
}

pub fn fourier_component(
    f: &TestFunction,
    zeta: &HoroPoint,
    lambda: u32,
    q: &QuadratureSpec,
) -> Result<Complex64, TransformError> {
    PreparedFunction::new(f, q)?.fourier_component(zeta, lambda)
}

/// The Euler derivative `sum_j zeta_j d(phi)/d(zeta_j)`, computed as
/// `d/dc phi(c zeta)` at `c = 1` with a fourth-order central difference.
/// The stencil points `c zeta` stay on the isotropic cone.
pub fn euler_derivative<F>(phi: F, zeta: &HoroPoint, h: f64) -> Result<Complex64, TransformError>
where
    F: Fn(&HoroPoint) -> Result<Complex64, TransformError>,
{
    check_stencil(zeta, h)?;
    let at = |c: f64| -> Result<Complex64, TransformError> {
        let v = phi(&HoroPoint::classify(c * *zeta.zeta())?)?;
        finite(v, "stencil value")
    };
    let d = (at(1.0 - 2.0 * h)? - at(1.0 - h)? * 8.0 + at(1.0 + h)? * 8.0 - at(1.0 + 2.0 * h)?) / (12.0 * h);
    finite(d, "Euler derivative")
}

fn check_stencil(zeta: &HoroPoint, h: f64) -> Result<(), TransformError> {
    if !(h > 0.0 && h < 0.25) {
        return Err(TransformError::Precondition(format!("stencil step {h} outside (0, 0.25)")));
    }
    require_interior(zeta)?;
    if !HoroPoint::classify((1.0 - 2.0 * h) * *zeta.zeta())?.is_interior() {
        return Err(TransformError::Precondition(format!(
            "stencil step {h} leaves the interior of Xi+ at this point"
        )));
    }
    Ok(())
}

/// `L phi = eps * sum_j zeta_j d(phi)/d(zeta_j) - phi / 2`, with `eps` from
/// [`euler_sign`].
pub fn apply_l<F>(phi: F, zeta: &HoroPoint, h: f64) -> Result<Complex64, TransformError>
where
    F: Fn(&HoroPoint) -> Result<Complex64, TransformError>,
{
    let d = euler_derivative(&phi, zeta, h)?;
    Ok(d * euler_sign() - phi(zeta)? * 0.5)
}

/// Outcome of the one-time calibration of the sign in `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignCalibration {
    pub epsilon: f64,
    /// `(sum zeta_j d_j phi) / phi` on the calibration fixture.
    pub euler_ratio: Complex64,
}

/// Fixes the sign by requiring `L f^ = (lambda - 1/2) f^` for
/// `f(x) = <x, 2 zeta0>^-2` at `zeta = 1.5 conj(zeta0)`.
pub fn calibrate_sign(q: &QuadratureSpec) -> Result<SignCalibration, TransformError> {
    let lambda = 2u32;
    let f = TestFunction::matrix_coefficient(2.0 * zeta0(), lambda)?;
    let prepared = PreparedFunction::new(&f, q)?;
    let zeta = HoroPoint::interior(1.5 * zeta0().conj())?;
    let phi = prepared.cauchy(&zeta)?;
    let euler = euler_derivative(|z| prepared.cauchy(z), &zeta, DEFAULT_STEP)?;
    let ratio = euler / phi;
    let target = f64::from(lambda);
    let epsilon = if (ratio - target).norm() <= (-ratio - target).norm() { 1.0 } else { -1.0 };
    Ok(SignCalibration {
        epsilon,
        euler_ratio: ratio,
    })
}

static CALIBRATION: OnceLock<SignCalibration> = OnceLock::new();

/// The frozen calibration, computed on first use at default quadrature.
pub fn sign_calibration() -> SignCalibration {
    *CALIBRATION.get_or_init(|| calibrate_sign(&QuadratureSpec::default()).expect("calibration fixture is valid"))
}

pub fn euler_sign() -> f64 {
    sign_calibration().epsilon
}

/// The curve `t -> zeta(t)` of horospheres through `z`.
#[derive(Debug, Clone, Copy)]
pub struct FiberCurve {
    z: CVec3,
    cosh_coef: [Complex64; 3],
    sinh_coef: [Complex64; 3],
}

impl FiberCurve {
    pub fn new(z: &CVec3) -> Result<Self, TransformError> {
        if !z.is_finite() {
            return Err(GeometryError::NonFinite.into());
        }
        let [z1, z2, z3] = z.0;
        let r = (z1 * z1 + z2 * z2).sqrt();
        if r.norm() <= DEGENERATE_R {
            return Err(TransformError::DegenerateFiber { r: r.norm() });
        }
        let i = Complex64::i();
        Ok(FiberCurve {
            z: *z,
            cosh_coef: [-i * z2 / r, i * z1 / r, Complex64::new(0.0, 0.0)],
            sinh_coef: [-i * z1 * z3 / r, -i * z2 * z3 / r, -i * r],
        })
    }

    pub fn z(&self) -> &CVec3 {
        &self.z
    }

    pub fn at(&self, t: f64) -> CVec3 {
        let (ch, sh) = (t.cosh(), t.sinh());
        let zeta = CVec3([0, 1, 2].map(|k| self.z.0[k] + self.cosh_coef[k] * ch + self.sinh_coef[k] * sh));
        debug_assert!(zeta.delta().norm() <= 1e-8 * zeta.norm().powi(2).max(1.0));
        debug_assert!((self.z.bilinear(&zeta) - 1.0).norm() <= 1e-8 * (self.z.norm() * zeta.norm()).max(1.0));
        zeta
    }
}

pub fn fiber_curve(z: &CVec3, t: f64) -> Result<CVec3, TransformError> {
    Ok(FiberCurve::new(z)?.at(t))
}

/// A truncated fiber integral with its end-panel tail estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberIntegral {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// Whether `lambda` lies in `Lambda_c` for the rank-one datum of the
/// hyperboloid.
pub fn in_lambda_c(lambda: u32) -> bool {
    fixtures::sl2()
        .classify(&WeightVector::from_ints(&[i64::from(lambda)]))
        .map(|c| c.lambda_c)
        .unwrap_or(false)
}

/// `phi^v(z) = int phi(zeta(t)) dt` over `|t| <= fiber_t_max`.
///
/// When `lambda_tag` names the spectral component of `phi`, components
/// outside `Lambda_c` are rejected before integrating. Independently, an
/// integral whose two end panels exceed [`TAIL_FRACTION`] of the total is
/// rejected as non-decaying.
pub fn inverse_transform<F>(
    phi: F,
    z: &CVec3,
    q: &QuadratureSpec,
    lambda_tag: Option<u32>,
) -> Result<FiberIntegral, TransformError>
where
    F: Fn(&HoroPoint) -> Result<Complex64, TransformError>,
{
    q.validate()?;
    if let Some(lambda) = lambda_tag {
        if !in_lambda_c(lambda) {
            return Err(TransformError::Divergence(format!(
                "lambda = {lambda} lies outside Lambda_c; the fiber integral does not converge absolutely"
            )));
        }
    }
    if !in_d_plus(z)? {
        return Err(TransformError::Precondition("z is not in D+ (Delta(Re z) <= 1)".into()));
    }
    let curve = FiberCurve::new(z)?;
    let base = HoroPoint::classify(curve.at(0.0))?;
    if base.orbit_type() != Some(OrbitType::Conjugate) || !base.is_interior() {
        return Err(TransformError::Precondition(
            "the principal-branch fiber through z does not lie in the interior of Xi+".into(),
        ));
    }
    let rule = CompositeRule::symmetric(q.fiber_t_max, q.fiber_n);
    let mut panel_sums = Vec::with_capacity(rule.panels());
    for (nodes, weights) in rule.nodes.chunks(rule.panel_len).zip(rule.weights.chunks(rule.panel_len)) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&t, &w) in nodes.iter().zip(weights) {
            let zeta = HoroPoint::interior(curve.at(t))?;
            acc += phi(&zeta)? * w;
        }
        panel_sums.push(finite(acc, "fiber integrand")?);
    }
    let value: Complex64 = panel_sums.iter().sum();
    let tail_bound = panel_sums[0].norm() + panel_sums[panel_sums.len() - 1].norm();
    if tail_bound > TAIL_FRACTION * value.norm() {
        return Err(TransformError::Divergence(format!(
            "end panels carry {tail_bound:e} against a total of {:e}",
            value.norm()
        )));
    }
    Ok(FiberIntegral { value, tail_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversionPoint {
    pub z: CVec3,
    /// `(L f^)^v(z)`.
    pub reconstructed: Complex64,
    pub tail_bound: f64,
    /// `f(z)`, when `f` has a known holomorphic extension.
    pub original: Option<Complex64>,
    pub ratio: Option<Complex64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InversionReport {
    pub lambda: Option<u32>,
    pub epsilon: f64,
    pub points: Vec<InversionPoint>,
    /// Mean of the ratios `R(z) / f(z)`, the measured normalization `c_norm`.
    pub mean_ratio: Option<Complex64>,
    /// Population standard deviation of the ratios over `|mean|`.
    pub coefficient_of_variation: Option<f64>,
}

/// Computes `R(z) = (L f^)^v(z)` at each `z` and compares it with `f(z)`.
pub fn inversion_pipeline(f: &TestFunction, z_list: &[CVec3], q: &QuadratureSpec) -> Result<InversionReport, TransformError> {
    q.validate()?;
    if let TestFunction::MatrixCoefficient { w, lambda } = f {
        if !in_lambda_c(*lambda) {
            return Err(TransformError::Divergence(format!(
                "lambda = {lambda} lies in Lambda_2 but not in Lambda_c; the inverse transform does not converge"
            )));
        }
        if w.orbit_type() != Some(OrbitType::Zeta0) {
            return Err(TransformError::Precondition(
                "w must lie in the G-orbit type of zeta0 so that f extends holomorphically to the fibers' side of D+"
                    .into(),
            ));
        }
    }
    let epsilon = euler_sign();
    let prepared = match f {
        TestFunction::Zero => None,
        _ => Some(PreparedFunction::new(f, q)?),
    };
    let mut points = Vec::with_capacity(z_list.len());
    for z in z_list {
        let integral = match &prepared {
            None => {
                // L 0 = 0, but the domain checks still apply.
                inverse_transform(|_| Ok(Complex64::new(0.0, 0.0)), z, q, None)?
            }
            Some(p) => inverse_transform(
                |zeta| {
                    let (v, d) = p.cauchy_with_euler(zeta, DEFAULT_STEP)?;
                    Ok(d * epsilon - v * 0.5)
                },
                z,
                q,
                f.lambda(),
            )?,
        };
        let original = f.eval_complex(z);
        let ratio = original.filter(|o| o.norm() > 0.0).map(|o| integral.value / o);
        points.push(InversionPoint {
            z: *z,
            reconstructed: integral.value,
            tail_bound: integral.tail_bound,
            original,
            ratio,
        });
    }
    let ratios: Vec<Complex64> = points.iter().filter_map(|p| p.ratio).collect();
    let (mean_ratio, coefficient_of_variation) = if ratios.is_empty() || ratios.len() != points.len() {
        (None, None)
    } else {
        let n = ratios.len() as f64;
        let mean: Complex64 = ratios.iter().sum::<Complex64>() / n;
        let var = ratios.iter().map(|r| (r - mean).norm_sqr()).sum::<f64>() / n;
        (Some(mean), Some(var.sqrt() / mean.norm()))
    };
    Ok(InversionReport {
        lambda: f.lambda(),
        epsilon,
        points,
        mean_ratio,
        coefficient_of_variation,
    })
}

/// `M[l-1][m-1] = int <x, zeta1>^(-l) <x, zeta2>^(-m) dx` for
/// `1 <= l, m <= lambda_max`.
pub fn schur_matrix(
    lambda_max: u32,
    zeta1: &HoroPoint,
    zeta2: &HoroPoint,
    q: &QuadratureSpec,
) -> Result<Vec<Vec<Complex64>>, TransformError> {
    require_interior(zeta1)?;
    require_interior(zeta2)?;
    if lambda_max == 0 {
        return Err(TransformError::Precondition("lambda_max must be positive".into()));
    }
    let grid = XGrid::new(q)?;
    let n = lambda_max as usize;
    let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let mut pa = vec![Complex64::new(0.0, 0.0); n];
    let mut pb = vec![Complex64::new(0.0, 0.0); n];
    for (x, w) in grid.points.iter().zip(&grid.weights) {
        let a = zeta1.zeta().pair_real(x).inv();
        let b = zeta2.zeta().pair_real(x).inv();
        let (mut ak, mut bk) = (a * *w, b);
        for k in 0..n {
            pa[k] = ak;
            pb[k] = bk;
            ak *= a;
            bk *= b;
        }
        for (row, &ai) in m.iter_mut().zip(&pa) {
            for (entry, &bj) in row.iter_mut().zip(&pb) {
                *entry += ai * bj;
            }
        }
    }
    for row in &m {
        for &v in row {
            finite(v, "Schur matrix")?;
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperboloid::{d_plus_curve, param_x, x0};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn coarse() -> QuadratureSpec {
        QuadratureSpec {
            n_t: 240,
            n_theta: 96,
            fiber_n: 300,
            ..Default::default()
        }
    }

    #[test]
    fn kernel_fixtures() {
        let x = HyperboloidPoint::new(x0()).unwrap();
        let z2 = HoroPoint::interior(2.0 * zeta0()).unwrap();
        assert_eq!(cauchy_kernel(&z2, &x).unwrap(), c(1.0, 0.0));
        for s in [10.0, 100.0, 1000.0] {
            let k = cauchy_kernel(&HoroPoint::interior(s * zeta0()).unwrap(), &x).unwrap();
            assert!((k * (s - 1.0) - 1.0).norm() < 1e-12);
        }
        let boundary = HoroPoint::classify(zeta0()).unwrap();
        assert!(cauchy_kernel(&boundary, &x).is_err());
    }

    #[test]
    fn kernel_matches_geometric_series() {
        let z = HoroPoint::interior(1.3 * zeta0().conj()).unwrap();
        for (t, th) in [(0.0, 0.0), (0.4, 2.0), (-1.1, 4.0)] {
            let x = param_x(t, th);
            let p = z.zeta().pair_real(x.vec());
            let k = cauchy_kernel(&z, &x).unwrap();
            let s: Complex64 = (1..=40).map(|l| p.inv().powu(l)).sum();
            let bound = p.norm().powi(-41) / (1.0 - 1.0 / p.norm());
            // equality holds for real p, so allow for rounding in K - S
            let slack = 64.0 * f64::EPSILON * (k.norm() + s.norm());
            assert!((k - s).norm() <= bound + slack);
        }
    }

    #[test]
    fn zero_function_transforms_to_zero() {
        let z = HoroPoint::interior(2.0 * zeta0()).unwrap();
        assert_eq!(cauchy_transform(&TestFunction::Zero, &z, &coarse()).unwrap(), c(0.0, 0.0));
        assert!(TestFunction::matrix_coefficient(zeta0(), 2).is_err());
        assert!(TestFunction::matrix_coefficient(2.0 * zeta0(), 0).is_err());
    }

    #[test]
    fn transform_is_linear() {
        let q = coarse();
        let z = HoroPoint::interior(1.6 * zeta0().conj()).unwrap();
        let f = TestFunction::custom("gauss", |x: &RVec3| c((-x.0[0] * x.0[0] - x.0[2] * x.0[2]).exp(), 0.0));
        let g = TestFunction::matrix_coefficient(2.0 * zeta0(), 2).unwrap();
        let (fa, ga) = (f.clone(), g.clone());
        let comb = TestFunction::custom("comb", move |x: &RVec3| fa.eval(x) * 2.0 - ga.eval(x) * c(0.0, 3.0));
        let lhs = cauchy_transform(&comb, &z, &q).unwrap();
        let rhs = cauchy_transform(&f, &z, &q).unwrap() * 2.0 - cauchy_transform(&g, &z, &q).unwrap() * c(0.0, 3.0);
        assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn component_homogeneity() {
        let q = coarse();
        // rotation-invariant functions have vanishing components at multiples of zeta0
        let f = TestFunction::custom("aniso", |x: &RVec3| {
            c((-(x.0[0] * x.0[0] + 2.0 * x.0[1] * x.0[1] + 3.0 * x.0[2] * x.0[2]) / 2.0).exp() * (1.0 + 0.5 * x.0[0]), 0.0)
        });
        let p = PreparedFunction::new(&f, &q).unwrap();
        let z = HoroPoint::interior(1.4 * zeta0()).unwrap();
        let zc = HoroPoint::interior(2.1 * *z.zeta()).unwrap();
        for lambda in 1..=3 {
            let a = p.fourier_component(&z, lambda).unwrap();
            let b = p.fourier_component(&zc, lambda).unwrap();
            assert!((b - a * 2.1f64.powi(-(lambda as i32))).norm() <= 1e-10 * b.norm());
        }
    }

    #[test]
    fn euler_identity_and_constants() {
        let z = HoroPoint::interior(1.7 * zeta0().conj()).unwrap();
        for lambda in 1..=4u32 {
            let phi = |zeta: &HoroPoint| Ok(zeta.zeta().pair_real(&x0()).inv().powu(lambda));
            let e = euler_derivative(phi, &z, DEFAULT_STEP).unwrap();
            let v = phi(&z).unwrap();
            assert!((e + v * f64::from(lambda)).norm() <= 1e-6 * v.norm());
        }
        let constant = |_: &HoroPoint| Ok(c(3.0, -1.0));
        assert!(euler_derivative(constant, &z, DEFAULT_STEP).unwrap().norm() < 1e-12);
        let l = apply_l(constant, &z, DEFAULT_STEP).unwrap();
        assert!((l - c(-1.5, 0.5)).norm() < 1e-12);
        let near = HoroPoint::interior(1.001 * zeta0()).unwrap();
        assert!(euler_derivative(constant, &near, DEFAULT_STEP).is_err());
    }

    #[test]
    fn fused_stencil_matches_generic_path() {
        let f = TestFunction::matrix_coefficient(2.0 * zeta0(), 3).unwrap();
        let p = PreparedFunction::new(&f, &coarse()).unwrap();
        let z = HoroPoint::interior(1.9 * zeta0().conj()).unwrap();
        let (v, d) = p.cauchy_with_euler(&z, DEFAULT_STEP).unwrap();
        let d2 = euler_derivative(|c| p.cauchy(c), &z, DEFAULT_STEP).unwrap();
        assert!((v - p.cauchy(&z).unwrap()).norm() <= 1e-14 * v.norm());
        assert!((d - d2).norm() <= 1e-12 * d.norm());
        assert!((d + v * 3.0).norm() <= 1e-6 * d.norm());
    }

    #[test]
    fn calibration_picks_negative_sign() {
        let cal = calibrate_sign(&coarse()).unwrap();
        assert_eq!(cal.epsilon, -1.0);
        assert!((cal.euler_ratio + 2.0).norm() < 1e-6);
    }

    #[test]
    fn fiber_through_x0() {
        let curve = FiberCurve::new(&x0().complexify()).unwrap();
        for t in [-3.0, 0.0, 0.5, 2.0] {
            let zeta = curve.at(t);
            let expected = CVec3::new(c(1.0, 0.0), c(0.0, t.cosh()), c(0.0, -t.sinh()));
            assert!((zeta - expected).norm() < 1e-14);
            assert!(zeta.delta().norm() < 1e-12 * zeta.norm().powi(2));
            assert!((zeta.pair_real(&x0()) - 1.0).norm() < 1e-12);
        }
        let degenerate = CVec3::new(c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(matches!(fiber_curve(&degenerate, 0.0), Err(TransformError::DegenerateFiber { .. })));
    }

    #[test]
    fn fiber_of_d_plus_point_is_interior() {
        for s in [0.3, 0.9, 1.5] {
            let z = d_plus_curve(s);
            let curve = FiberCurve::new(&z).unwrap();
            for k in -20..=20 {
                let zeta = curve.at(0.5 * k as f64);
                let h = HoroPoint::classify(zeta).unwrap();
                assert!(h.is_interior());
                assert_eq!(h.orbit_type(), Some(OrbitType::Conjugate));
                assert!((z.bilinear(&zeta) - 1.0).norm() < 1e-10 * zeta.norm().max(1.0));
            }
        }
    }

    #[test]
    fn inverse_transform_domain_checks() {
        let q = coarse();
        let zero = |_: &HoroPoint| Ok(c(0.0, 0.0));
        let r = inverse_transform(zero, &d_plus_curve(0.7), &q, None).unwrap();
        assert_eq!(r.value, c(0.0, 0.0));
        assert!(matches!(
            inverse_transform(zero, &d_plus_curve(0.7), &q, Some(1)),
            Err(TransformError::Divergence(_))
        ));
        assert!(matches!(
            inverse_transform(zero, &x0().complexify(), &q, None),
            Err(TransformError::Precondition(_))
        ));
        assert!(matches!(
            inverse_transform(zero, &d_plus_curve(-0.7), &q, None),
            Err(TransformError::Precondition(_))
        ));
        // phi independent of t: every panel carries the same weight
        let one = |_: &HoroPoint| Ok(c(1.0, 0.0));
        assert!(matches!(
            inverse_transform(one, &d_plus_curve(0.7), &q, None),
            Err(TransformError::Divergence(_))
        ));
    }

    #[test]
    fn fiber_integrand_is_symmetric_for_x0_type_point() {
        let z = d_plus_curve(0.8);
        let curve = FiberCurve::new(&z).unwrap();
        for t in [0.5, 1.5, 3.0] {
            let a = curve.at(t).bilinear(&z).norm();
            let b = curve.at(-t).bilinear(&z).norm();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_c_membership() {
        assert!(!in_lambda_c(1));
        assert!(in_lambda_c(2) && in_lambda_c(3));
    }

    #[test]
    fn pipeline_rejects_lambda_one() {
        let f = TestFunction::matrix_coefficient(2.0 * zeta0(), 1).unwrap();
        let err = inversion_pipeline(&f, &[d_plus_curve(0.5)], &coarse()).unwrap_err();
        assert!(matches!(err, TransformError::Divergence(_)));
        let conj = TestFunction::matrix_coefficient(2.0 * zeta0().conj(), 2).unwrap();
        assert!(matches!(
            inversion_pipeline(&conj, &[d_plus_curve(0.5)], &coarse()),
            Err(TransformError::Precondition(_))
        ));
    }

    #[test]
    fn pipeline_zero_function() {
        let r = inversion_pipeline(&TestFunction::Zero, &[d_plus_curve(0.5), d_plus_curve(1.0)], &coarse()).unwrap();
        assert!(r.points.iter().all(|p| p.reconstructed == c(0.0, 0.0) && p.ratio.is_none()));
        assert!(r.mean_ratio.is_none());
    }

    #[test]
    fn transform_of_matrix_coefficient_has_closed_form() {
        // f^(zeta) = 2^l 2 pi sqrt(pi) Gamma(l - 1/2) / Gamma(l) <w, zeta>^-l
        let q = QuadratureSpec::default();
        let f = TestFunction::matrix_coefficient(2.0 * zeta0(), 2).unwrap();
        let zeta = HoroPoint::interior(1.5 * zeta0().conj()).unwrap();
        let got = cauchy_transform(&f, &zeta, &q).unwrap();
        let constant = 4.0 * 2.0 * PI * PI.sqrt() * (0.5 * PI.sqrt());
        let expected = (2.0 * zeta0()).bilinear(zeta.zeta()).inv().powu(2) * constant;
        assert!((got - expected).norm() < 1e-10 * expected.norm(), "{got} {expected}");
        let same_type = HoroPoint::interior(1.5 * zeta0()).unwrap();
        assert!(cauchy_transform(&f, &same_type, &q).unwrap().norm() < 1e-10);
    }

    #[test]
    fn schur_small() {
        let z1 = HoroPoint::interior(1.5 * zeta0()).unwrap();
        let z2 = HoroPoint::interior(1.8 * zeta0().conj()).unwrap();
        let m = schur_matrix(3, &z1, &z2, &coarse()).unwrap();
        let max = m.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if i != j {
                    assert!(v.norm() < 1e-7 * max, "{i} {j} {v}");
                } else {
                    assert!(v.norm() > 1e-3 * max);
                }
            }
        }
    }
}
