//! The one-sheeted hyperboloid `X = {x1^2 + x2^2 - x3^2 = 1}`, its
//! complexification, the isotropic cone of horospheres and the action of
//! `SO_e(2,1)`.
//!
//! The pairing `<z, w> = z1 w1 + z2 w2 - z3 w3` is complex bilinear, not
//! sesquilinear, and `Delta(z) = <z, z>`.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

/// Relative tolerance for manifold constraints such as `Delta(x) = 1`.
pub const TOL_CONSTRAINT: f64 = 1e-10;
/// Margin on strict inequalities such as `Delta(Re z) > 1`.
pub const TOL_DOMAIN: f64 = 1e-12;
/// Horopoints with `|Delta(Re zeta) - 1|` inside this window are boundary points.
pub const BOUNDARY_WINDOW: f64 = 1e-8;
/// Largest rapidity of sampled group words (see [`sample_group_word`]).
pub const MAX_WORD_RAPIDITY: f64 = 2.5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point is not on the hyperboloid: Delta = {delta}")]
    NotOnHyperboloid { delta: f64 },
    #[error("vector is not isotropic: Delta = {delta:e}")]
    NotIsotropic { delta: f64 },
    #[error("the zero vector is not a horosphere")]
    ZeroVector,
    #[error("horopoint is not interior (class {class:?}, Delta(Re) = {delta_re})")]
    NotInterior { class: HoroClass, delta_re: f64 },
    #[error("zero pairing <z, zeta>")]
    ZeroPairing,
    #[error("non-finite coordinates")]
    NonFinite,
    #[error("boost axis must be 1 or 2, got {0}")]
    InvalidAxis(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RVec3(pub [f64; 3]);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CVec3(pub [Complex64; 3]);

impl RVec3 {
    pub fn pair(&self, other: &RVec3) -> f64 {
        let (a, b) = (self.0, other.0);
        a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
    }

    pub fn delta(&self) -> f64 {
        self.pair(self)
    }

    pub fn complexify(&self) -> CVec3 {
        CVec3(self.0.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    fn cross(&self, o: &RVec3) -> RVec3 {
        let (a, b) = (self.0, o.0);
        RVec3([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ])
    }
}

impl CVec3 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        CVec3([a, b, c])
    }

    /// The complex bilinear pairing `<z, w>`.
    pub fn bilinear(&self, other: &CVec3) -> Complex64 {
        let (a, b) = (self.0, other.0);
        a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
    }

    /// `<z, x>` for a real `x`, without promoting `x`.
    pub fn pair_real(&self, x: &RVec3) -> Complex64 {
        let (a, b) = (self.0, x.0);
        a[0] * b[0] + a[1] * b[1] - a[2] * b[2]
    }

    pub fn delta(&self) -> Complex64 {
        self.bilinear(self)
    }

    pub fn re(&self) -> RVec3 {
        RVec3(self.0.map(|c| c.re))
    }

    pub fn im(&self) -> RVec3 {
        RVec3(self.0.map(|c| c.im))
    }

    pub fn conj(&self) -> CVec3 {
        CVec3(self.0.map(|c| c.conj()))
    }

    pub fn scale(&self, c: Complex64) -> CVec3 {
        CVec3(self.0.map(|x| x * c))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Mul<CVec3> for f64 {
    type Output = CVec3;
    fn mul(self, v: CVec3) -> CVec3 {
        v.scale(Complex64::new(self, 0.0))
    }
}

/// Base point `x0 = (1, 0, 0)`.
pub fn x0() -> RVec3 {
    RVec3([1.0, 0.0, 0.0])
}

/// Base horosphere `zeta0 = (1, -i, 0)`.
pub fn zeta0() -> CVec3 {
    CVec3([Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 0.0)])
}

/// A point of the real hyperboloid `X`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HyperboloidPoint(RVec3);

impl HyperboloidPoint {
    /// `(cosh t cos theta, cosh t sin theta, sinh t)`.
    pub fn param(t: f64, theta: f64) -> Self {
        let (ch, sh) = (t.cosh(), t.sinh());
        HyperboloidPoint(RVec3([ch * theta.cos(), ch * theta.sin(), sh]))
    }

    pub fn new(v: RVec3) -> Result<Self, GeometryError> {
        if !v.0.iter().all(|x| x.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let delta = v.delta();
        if (delta - 1.0).abs() > TOL_CONSTRAINT * v.norm().powi(2).max(1.0) {
            return Err(GeometryError::NotOnHyperboloid { delta });
        }
        Ok(HyperboloidPoint(v))
    }

    pub fn vec(&self) -> &RVec3 {
        &self.0
    }
}

pub fn param_x(t: f64, theta: f64) -> HyperboloidPoint {
    HyperboloidPoint::param(t, theta)
}

/// Density of the invariant measure of `X` in the `(t, theta)` chart.
pub fn invariant_density(t: f64) -> f64 {
    t.cosh()
}

fn check_on_complex_hyperboloid(z: &CVec3) -> Result<(), GeometryError> {
    if !z.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let d = z.delta();
    if (d - 1.0).norm() > TOL_CONSTRAINT * z.norm().powi(2).max(1.0) {
        return Err(GeometryError::NotOnHyperboloid { delta: d.re });
    }
    Ok(())
}

/// Membership in `D+ = {z in X_C : Delta(Re z) > 1}`.
pub fn in_d_plus(z: &CVec3) -> Result<bool, GeometryError> {
    check_on_complex_hyperboloid(z)?;
    Ok(z.re().delta() > 1.0 + TOL_DOMAIN)
}

/// The point `(cosh s, i sinh s, 0)`, which lies in `D+` for `s != 0`.
pub fn d_plus_curve(s: f64) -> CVec3 {
    CVec3([
        Complex64::new(s.cosh(), 0.0),
        Complex64::new(0.0, s.sinh()),
        Complex64::new(0.0, 0.0),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HoroClass {
    Interior,
    Boundary,
    Other,
}

/// The two `G`-orbit types inside `Delta(Re) = Delta(Im) > 0`: the type of
/// `zeta0` and the type of its complex conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitType {
    Zeta0,
    Conjugate,
}

/// A nonzero isotropic vector with its classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HoroPoint {
    zeta: CVec3,
    class: HoroClass,
}

impl HoroPoint {
    pub fn classify(zeta: CVec3) -> Result<Self, GeometryError> {
        if !zeta.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        let scale = zeta.norm();
        if scale == 0.0 {
            return Err(GeometryError::ZeroVector);
        }
        let delta = zeta.delta();
        if delta.norm() > TOL_CONSTRAINT * scale * scale {
            return Err(GeometryError::NotIsotropic { delta: delta.norm() });
        }
        let (re, im) = (zeta.re(), zeta.im());
        let (dr, di) = (re.delta(), im.delta());
        debug_assert!((dr - di).abs() <= 1e-8 * scale * scale);
        debug_assert!(re.pair(&im).abs() <= 1e-8 * scale * scale);
        let class = if (dr - 1.0).abs() <= BOUNDARY_WINDOW {
            HoroClass::Boundary
        } else if dr > 1.0 + TOL_DOMAIN {
            HoroClass::Interior
        } else {
            HoroClass::Other
        };
        Ok(HoroPoint { zeta, class })
    }

    /// Classifies and insists on an interior point of `Xi+`.
    pub fn interior(zeta: CVec3) -> Result<Self, GeometryError> {
        let h = Self::classify(zeta)?;
        if h.class != HoroClass::Interior {
            return Err(GeometryError::NotInterior {
                class: h.class,
                delta_re: zeta.re().delta(),
            });
        }
        Ok(h)
    }

    pub fn zeta(&self) -> &CVec3 {
        &self.zeta
    }

    pub fn class(&self) -> HoroClass {
        self.class
    }

    pub fn is_interior(&self) -> bool {
        self.class == HoroClass::Interior
    }

    /// `None` for real isotropic vectors, which have no orbit type.
    pub fn orbit_type(&self) -> Option<OrbitType> {
        let (re, im) = (self.zeta.re(), self.zeta.im());
        if re.delta() <= 0.0 {
            return None;
        }
        // The Lorentz normal J (Re x Im) is timelike and its time direction is
        // preserved by SO_e(2,1); for zeta0 its last coordinate is +1.
        let n3 = -re.cross(&im).0[2];
        Some(if n3 > 0.0 { OrbitType::Zeta0 } else { OrbitType::Conjugate })
    }
}

/// `|<z, zeta> - 1| <= tol`.
pub fn on_horosphere(z: &CVec3, zeta: &HoroPoint, tol: f64) -> Result<bool, GeometryError> {
    check_on_complex_hyperboloid(z)?;
    Ok((z.bilinear(zeta.zeta()) - 1.0).norm() <= tol)
}

/// `<z, zeta>^(-lambda)`, the power `a_H(zeta^-1 z)^lambda`.
pub fn a_h_power(z: &CVec3, zeta: &HoroPoint, lambda: u32) -> Result<Complex64, GeometryError> {
    let p = z.bilinear(zeta.zeta());
    if p.norm() == 0.0 {
        return Err(GeometryError::ZeroPairing);
    }
    Ok(p.inv().powu(lambda))
}

/// A real element of `SO_e(2,1)`, acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupElement(pub [[f64; 3]; 3]);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// The rotation of the compact torus `T = K`.
    pub fn rotation(theta: f64) -> Self {
        let (c, s) = (theta.cos(), theta.sin());
        GroupElement([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
    }

    /// Boost in the `(x_axis, x3)` plane, `axis` in `{1, 2}`.
    pub fn boost(axis: u8, s: f64) -> Result<Self, GeometryError> {
        let (c, h) = (s.cosh(), s.sinh());
        match axis {
            1 => Ok(GroupElement([[c, 0.0, h], [0.0, 1.0, 0.0], [h, 0.0, c]])),
            2 => Ok(GroupElement([[1.0, 0.0, 0.0], [0.0, c, h], [0.0, h, c]])),
            other => Err(GeometryError::InvalidAxis(other)),
        }
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        GroupElement(out)
    }

    /// `g^-1 = J g^T J`.
    pub fn inverse(&self) -> GroupElement {
        let sign = [1.0, 1.0, -1.0];
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = sign[i] * self.0[j][i] * sign[j];
            }
        }
        GroupElement(out)
    }

    pub fn act_real(&self, v: &RVec3) -> RVec3 {
        let m = &self.0;
        RVec3([0, 1, 2].map(|i| m[i][0] * v.0[0] + m[i][1] * v.0[1] + m[i][2] * v.0[2]))
    }

    pub fn act(&self, v: &CVec3) -> CVec3 {
        let m = &self.0;
        CVec3([0, 1, 2].map(|i| v.0[0] * m[i][0] + v.0[1] * m[i][1] + v.0[2] * m[i][2]))
    }

    /// Largest deviation of `g^T J g` from `J`.
    pub fn form_defect(&self) -> f64 {
        let sign = [1.0, 1.0, -1.0];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let v: f64 = (0..3).map(|k| self.0[k][i] * sign[k] * self.0[k][j]).sum();
                let target = if i == j { sign[i] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Rapidity `b` of the Cartan decomposition `k1 a_b k2`: the singular
    /// values of `g` are `e^b, 1, e^-b`.
    pub fn rapidity(&self) -> f64 {
        let frob: f64 = self.0.iter().flatten().map(|x| x * x).sum();
        0.5 * ((frob - 1.0) / 2.0).max(1.0).acosh()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Generator {
    Rotation(f64),
    Boost1(f64),
    Boost2(f64),
}

impl Generator {
    pub fn element(&self) -> GroupElement {
        match *self {
            Generator::Rotation(t) => GroupElement::rotation(t),
            Generator::Boost1(s) => GroupElement::boost(1, s).expect("valid axis"),
            Generator::Boost2(s) => GroupElement::boost(2, s).expect("valid axis"),
        }
    }
}

/// A word in rotations and the two boosts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupWord(pub Vec<Generator>);

impl GroupWord {
    pub fn element(&self) -> GroupElement {
        self.0
            .iter()
            .fold(GroupElement::identity(), |g, gen| g.compose(&gen.element()))
    }
}

/// Samples a word of length 1..=4 with parameters in `[-2, 2]` (angles in
/// `[0, 2 pi)`), rejecting words whose rapidity exceeds
/// [`MAX_WORD_RAPIDITY`].
pub fn sample_group_word<R: Rng>(rng: &mut R) -> GroupWord {
    loop {
        let len = rng.gen_range(1..=4);
        let word = GroupWord(
            (0..len)
                .map(|_| match rng.gen_range(0..3) {
                    0 => Generator::Rotation(rng.gen_range(0.0..2.0 * PI)),
                    1 => Generator::Boost1(rng.gen_range(-2.0..=2.0)),
                    _ => Generator::Boost2(rng.gen_range(-2.0..=2.0)),
                })
                .collect(),
        );
        if word.element().rapidity() <= MAX_WORD_RAPIDITY {
            return word;
        }
    }
}

/// A seeded interior horopoint `g (s zeta0)` or `g (s conj(zeta0))` with
/// `s in [1.2, 3]`.
pub fn sample_interior_horopoint<R: Rng>(rng: &mut R, orbit: Option<OrbitType>) -> HoroPoint {
    let s = rng.gen_range(1.2..3.0);
    let orbit = orbit.unwrap_or(if rng.gen_bool(0.5) { OrbitType::Zeta0 } else { OrbitType::Conjugate });
    let base = match orbit {
        OrbitType::Zeta0 => zeta0(),
        OrbitType::Conjugate => zeta0().conj(),
    };
    let g = sample_group_word(rng).element();
    HoroPoint::interior(g.act(&(s * base))).expect("G preserves Xi+")
}

/// A seeded point `g (cosh s, i sinh s, 0)` of `D+` with `s in [0.3, 1.5]`,
/// restricted to `Re(z1^2 + z2^2) > 0.1` so the principal square root used
/// by the fiber parametrization stays away from its cut.
pub fn sample_d_plus_point<R: Rng>(rng: &mut R) -> CVec3 {
    loop {
        let s = rng.gen_range(0.3..1.5);
        let g = sample_group_word(rng).element();
        let z = g.act(&d_plus_curve(s));
        let r2 = z.0[0] * z.0[0] + z.0[1] * z.0[1];
        if r2.re > 0.1 {
            return z;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pairing_fixtures() {
        let x = x0().complexify();
        assert_eq!(zeta0().bilinear(&x), c(1.0, 0.0));
        assert_eq!(x.delta(), c(1.0, 0.0));
        for theta in [0.0, 0.4, 2.0, -1.3] {
            let a = GroupElement::rotation(theta).act(&x);
            let p = a.bilinear(&zeta0());
            assert!((p - c(theta.cos(), theta.sin())).norm() < 1e-15);
        }
    }

    #[test]
    fn param_x_properties() {
        assert_eq!(*param_x(0.0, 0.0).vec(), x0());
        let a = param_x(0.7, 1.1);
        let b = param_x(0.7, 1.1 + 2.0 * PI);
        for i in 0..3 {
            assert!((a.vec().0[i] - b.vec().0[i]).abs() < 1e-14);
        }
        assert!((param_x(1.3, 2.1).vec().delta() - 1.0).abs() < 1e-14);
        assert!(HyperboloidPoint::new(RVec3([1.0, 1.0, 0.0])).is_err());
    }

    #[test]
    fn density_basics() {
        assert_eq!(invariant_density(0.0), 1.0);
        assert_eq!(invariant_density(-2.5), invariant_density(2.5));
    }

    #[test]
    fn d_plus_membership() {
        assert!(in_d_plus(&d_plus_curve(1.0)).unwrap());
        assert!(!in_d_plus(&x0().complexify()).unwrap());
        let z = CVec3::new(c(0.5f64.cos(), 0.0), c(0.0, 0.0), c(0.0, 0.5f64.sin()));
        assert!(!in_d_plus(&z).unwrap());
        assert!(in_d_plus(&zeta0()).is_err());
    }

    #[test]
    fn horopoint_classes() {
        assert_eq!(HoroPoint::classify(zeta0()).unwrap().class(), HoroClass::Boundary);
        assert_eq!(HoroPoint::classify(2.0 * zeta0()).unwrap().class(), HoroClass::Interior);
        let real = CVec3::new(c(1.0, 0.0), c(1.0, 0.0), c(2f64.sqrt(), 0.0));
        let h = HoroPoint::classify(real).unwrap();
        assert_eq!(h.class(), HoroClass::Other);
        assert_eq!(h.orbit_type(), None);
        assert_eq!(HoroPoint::classify(0.5 * zeta0()).unwrap().class(), HoroClass::Other);
        assert!(matches!(
            HoroPoint::classify(x0().complexify()),
            Err(GeometryError::NotIsotropic { .. })
        ));
        assert!(matches!(
            HoroPoint::classify(CVec3::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))),
            Err(GeometryError::ZeroVector)
        ));
        assert!(HoroPoint::interior(zeta0()).is_err());
    }

    #[test]
    fn orbit_types() {
        let a = HoroPoint::classify(zeta0()).unwrap();
        let b = HoroPoint::classify(zeta0().conj()).unwrap();
        assert_eq!(a.orbit_type(), Some(OrbitType::Zeta0));
        assert_eq!(b.orbit_type(), Some(OrbitType::Conjugate));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = sample_group_word(&mut rng).element();
            let h = HoroPoint::classify(g.act(&(1.7 * zeta0()))).unwrap();
            assert_eq!(h.orbit_type(), Some(OrbitType::Zeta0));
            assert_eq!(h.class(), HoroClass::Interior);
        }
    }

    #[test]
    fn horosphere_incidence() {
        let x = x0().complexify();
        assert!(on_horosphere(&x, &HoroPoint::classify(zeta0()).unwrap(), 1e-12).unwrap());
        assert!(!on_horosphere(&x, &HoroPoint::classify(2.0 * zeta0()).unwrap(), 1e-12).unwrap());
    }

    #[test]
    fn a_h_power_values() {
        let x = x0().complexify();
        let z2 = HoroPoint::classify(2.0 * zeta0()).unwrap();
        assert_eq!(a_h_power(&x, &z2, 1).unwrap(), c(0.5, 0.0));
        let p1 = a_h_power(&d_plus_curve(0.4), &z2, 1).unwrap();
        let p2 = a_h_power(&d_plus_curve(0.4), &z2, 2).unwrap();
        assert!((p2 - p1 * p1).norm() < 1e-15);
        let real = HoroPoint::classify(CVec3::new(c(1.0, 0.0), c(1.0, 0.0), c(2f64.sqrt(), 0.0))).unwrap();
        let y = param_x(2f64.sqrt().asinh(), PI / 4.0).vec().complexify();
        // (sqrt(3) cos(pi/4), sqrt(3) sin(pi/4), sqrt 2) pairs to sqrt 6 - 2 with the real isotropic vector
        assert!(a_h_power(&y, &real, 1).is_ok());
        let orth = CVec3::new(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let iso = HoroPoint::classify(CVec3::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))).unwrap();
        assert_eq!(a_h_power(&orth, &iso, 1), Err(GeometryError::ZeroPairing));
    }

    #[test]
    fn group_elements() {
        let r = GroupElement::rotation(0.3).act_real(&x0());
        assert!((r.0[0] - 0.3f64.cos()).abs() < 1e-15 && (r.0[1] + 0.3f64.sin()).abs() < 1e-15);
        let b = GroupElement::boost(1, 0.8).unwrap();
        let v = b.act_real(&x0());
        assert!((v.0[0] - 0.8f64.cosh()).abs() < 1e-15 && (v.0[2] - 0.8f64.sinh()).abs() < 1e-15);
        assert!(b.form_defect() < 1e-14);
        assert!(GroupElement::boost(3, 0.1).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = sample_group_word(&mut rng).element();
            assert!(g.form_defect() < 1e-12);
            assert!((g.determinant() - 1.0).abs() < 1e-10);
            assert!(g.rapidity() <= MAX_WORD_RAPIDITY);
            let id = g.compose(&g.inverse());
            assert!((id.0[0][0] - 1.0).abs() < 1e-10 && id.0[0][1].abs() < 1e-10);
            let z = d_plus_curve(0.9);
            assert!((g.act(&z).delta() - z.delta()).norm() < 1e-12 * g.act(&z).norm().powi(2));
        }
        assert!((GroupElement::boost(2, 1.7).unwrap().compose(&GroupElement::rotation(0.4)).rapidity() - 1.7).abs() < 1e-12);
    }

    #[test]
    fn scaling_moves_zeta0_inward() {
        for s in [1.01, 1.5, 4.0] {
            assert!(HoroPoint::classify(s * zeta0()).unwrap().is_interior());
        }
        assert_eq!(HoroPoint::classify(1.0 * zeta0()).unwrap().class(), HoroClass::Boundary);
    }
}
