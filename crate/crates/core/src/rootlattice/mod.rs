//! Exact-rational engine for Hermitian restricted root systems.
//!
//! A [`RootDatum`] carries the roots of `a*` together with their
//! compact/noncompact type, multiplicities, a rational Gram form and the
//! simple system `Pi` of the positive system `Delta_n^+ u Delta_k^-`.
//! Everything here is computed with [`BigRational`]; there is no floating
//! point and no tolerance anywhere in this module.

mod format;
pub mod fixtures;
pub mod lp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use format::{parse_datum, render_datum};
use lp::{maximize, LpOutcome};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("invariant violated ({invariant}): {detail}")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("root index {0} out of range")]
    InvalidIndex(usize),
    #[error("singular linear system: {0}")]
    Singular(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

/// A rational coordinate vector in `a*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<Q>);

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![Q::zero(); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        WeightVector(v.iter().map(|&x| Q::from_integer(x.into())).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn scale(&self, c: &Q) -> Self {
        WeightVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, rhs: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&WeightVector> for &Q {
    type Output = WeightVector;
    fn mul(self, rhs: &WeightVector) -> WeightVector {
        rhs.scale(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RootKind {
    Compact,
    Noncompact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub coords: WeightVector,
    pub kind: RootKind,
    pub multiplicity: u32,
    pub positive: bool,
}

/// Membership flags of a weight in the parameter sets.
///
/// `lambda_sd` is `None` when the datum carries no `Sigma^+` (the
/// non-equal-rank case), where the Harish-Chandra condition is not evaluated.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LatticeClass {
    pub lambda_0: bool,
    pub lambda_ge0: bool,
    pub lambda_gt0: bool,
    pub lambda_1: bool,
    pub lambda_2: bool,
    pub lambda_sd: Option<bool>,
    pub lambda_c: bool,
}

impl LatticeClass {
    /// The inclusions `L1 <= L2`, `Lc <= L2` and `L>0 <= L>=0`.
    pub fn respects_inclusions(&self) -> bool {
        (!self.lambda_1 || self.lambda_2)
            && (!self.lambda_c || self.lambda_2)
            && (!self.lambda_gt0 || self.lambda_ge0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum {
    name: String,
    rank: usize,
    roots: Vec<Root>,
    gram: Vec<Vec<Q>>,
    simple: Vec<usize>,
    sigma_plus: Option<Vec<WeightVector>>,
    noncompact_simple: usize,
}

impl RootDatum {
    /// Builds a datum and checks every structural invariant.
    pub fn new(
        name: impl Into<String>,
        gram: Vec<Vec<Q>>,
        roots: Vec<Root>,
        simple: Vec<usize>,
        sigma_plus: Option<Vec<WeightVector>>,
    ) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 {
            return Err(invariant("rank", "rank must be positive".into()));
        }
        let mut datum = RootDatum {
            name: name.into(),
            rank,
            roots,
            gram,
            simple,
            sigma_plus,
            noncompact_simple: 0,
        };
        datum.validate()?;
        Ok(datum)
    }

    fn validate(&mut self) -> Result<(), LatticeError> {
        let m = self.rank;
        if self.gram.iter().any(|row| row.len() != m) {
            return Err(invariant("gram", "gram matrix must be square of size rank".into()));
        }
        for i in 0..m {
            for j in 0..i {
                if self.gram[i][j] != self.gram[j][i] {
                    return Err(invariant("gram symmetric", format!("entry ({i},{j}) differs from ({j},{i})")));
                }
            }
        }
        // Sylvester: every leading principal minor positive.
        for k in 1..=m {
            let minor: Vec<Vec<Q>> = self.gram[..k].iter().map(|r| r[..k].to_vec()).collect();
            if !determinant(minor).is_positive() {
                return Err(invariant(
                    "gram positive definite",
                    format!("leading minor of order {k} is not positive"),
                ));
            }
        }

        for (i, r) in self.roots.iter().enumerate() {
            if r.coords.rank() != m {
                return Err(invariant("root dimension", format!("root {i} has {} coordinates", r.coords.rank())));
            }
            if r.coords.is_zero() {
                return Err(invariant("nonzero roots", format!("root {i} is zero")));
            }
            if r.multiplicity == 0 {
                return Err(invariant("multiplicity", format!("root {i} has multiplicity 0")));
            }
            if self.roots[..i].iter().any(|s| s.coords == r.coords) {
                return Err(invariant("distinct roots", format!("root {i} is listed twice")));
            }
        }
        for (i, r) in self.roots.iter().enumerate() {
            let neg = -&r.coords;
            match self.roots.iter().find(|s| s.coords == neg) {
                None => {
                    return Err(invariant("closed under negation", format!("root {i} = {} has no negative", r.coords)));
                }
                Some(s) => {
                    if s.kind != r.kind || s.multiplicity != r.multiplicity {
                        return Err(invariant(
                            "closed under negation",
                            format!("root {i} and its negative disagree in kind or multiplicity"),
                        ));
                    }
                    if s.positive == r.positive {
                        return Err(invariant(
                            "positive system",
                            format!("exactly one of root {i} and its negative must be positive"),
                        ));
                    }
                }
            }
        }

        // Simple system.
        if self.simple.len() != m {
            return Err(invariant("simple basis", format!("expected {m} simple roots, got {}", self.simple.len())));
        }
        if let Some(&bad) = self.simple.iter().find(|&&i| i >= self.roots.len()) {
            return Err(LatticeError::InvalidIndex(bad));
        }
        let noncompact: Vec<usize> = (0..m)
            .filter(|&k| self.roots[self.simple[k]].kind == RootKind::Noncompact)
            .collect();
        if noncompact.len() != 1 {
            return Err(invariant(
                "exactly one noncompact simple root",
                format!("found {} noncompact simple roots", noncompact.len()),
            ));
        }
        self.noncompact_simple = noncompact[0];
        let basis: Vec<Vec<Q>> = self.simple.iter().map(|&i| self.roots[i].coords.0.clone()).collect();
        if determinant(basis.clone()).is_zero() {
            return Err(invariant("simple basis", "simple roots are linearly dependent".into()));
        }
        // Every root is an integral combination of Pi with coefficients of one
        // sign, positive exactly on Delta_n^+ u Delta_k^-.
        let transposed = transpose(&basis);
        for (i, r) in self.roots.iter().enumerate() {
            let coeffs = solve(&transposed, &r.coords.0).ok_or(LatticeError::Singular("simple basis"))?;
            if coeffs.iter().any(|c| !c.is_integer()) {
                return Err(invariant("simple basis", format!("root {i} is not an integral combination of Pi")));
            }
            let nonneg = coeffs.iter().all(|c| !c.is_negative());
            let nonpos = coeffs.iter().all(|c| !c.is_positive());
            if !nonneg && !nonpos {
                return Err(invariant("simple basis", format!("root {i} has mixed-sign coefficients over Pi")));
            }
            let in_pi_system = match r.kind {
                RootKind::Noncompact => r.positive,
                RootKind::Compact => !r.positive,
            };
            if nonneg != in_pi_system {
                return Err(invariant(
                    "simple basis",
                    format!("Pi is not a basis of Delta_n^+ u Delta_k^- (root {i})"),
                ));
            }
        }

        // Delta_n^+ is stable under reflections in compact roots.
        for beta in self.roots.iter().filter(|r| r.kind == RootKind::Compact) {
            for alpha in self.noncompact_positive() {
                let image = self.reflect(&alpha.coords, &beta.coords);
                let ok = self
                    .roots
                    .iter()
                    .any(|r| r.coords == image && r.kind == RootKind::Noncompact && r.positive);
                if !ok {
                    return Err(invariant(
                        "Delta_n^+ is W_k-invariant",
                        format!("reflection of {} in {} leaves Delta_n^+", alpha.coords, beta.coords),
                    ));
                }
            }
        }

        if let Some(sigma) = &self.sigma_plus {
            if sigma.len() * 2 != self.roots.len() {
                return Err(invariant(
                    "sigma_plus",
                    format!("expected {} elements (half of Delta), got {}", self.roots.len() / 2, sigma.len()),
                ));
            }
            for (i, s) in sigma.iter().enumerate() {
                if s.rank() != m {
                    return Err(invariant("sigma_plus", format!("element {i} has wrong dimension")));
                }
                if !self.roots.iter().any(|r| r.coords == *s) {
                    return Err(invariant("sigma_plus", format!("element {i} = {s} is not a root")));
                }
                if sigma.contains(&-s) {
                    return Err(invariant("sigma_plus", format!("element {i} and its negative both listed")));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.gram
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn sigma_plus(&self) -> Option<&[WeightVector]> {
        self.sigma_plus.as_deref()
    }

    /// Position within `Pi` of the unique noncompact simple root `alpha_m`.
    pub fn noncompact_simple_position(&self) -> usize {
        self.noncompact_simple
    }

    pub fn simple_roots(&self) -> impl Iterator<Item = &Root> {
        self.simple.iter().map(|&i| &self.roots[i])
    }

    pub fn noncompact_positive(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.kind == RootKind::Noncompact && r.positive)
    }

    pub fn compact_positive(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| r.kind == RootKind::Compact && r.positive)
    }

    pub fn inner(&self, a: &WeightVector, b: &WeightVector) -> Q {
        let mut acc = Q::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if !bj.is_zero() && !self.gram[i][j].is_zero() {
                    acc += ai * &self.gram[i][j] * bj;
                }
            }
        }
        acc
    }

    /// `lambda(alpha_check) = 2 <lambda, alpha> / <alpha, alpha>`.
    pub fn eval_on_coroot(&self, lambda: &WeightVector, alpha: &WeightVector) -> Q {
        q(2, 1) * self.inner(lambda, alpha) / self.inner(alpha, alpha)
    }

    fn reflect(&self, v: &WeightVector, beta: &WeightVector) -> WeightVector {
        let c = self.eval_on_coroot(v, beta);
        v - &beta.scale(&c)
    }

    fn check_dim(&self, v: &WeightVector) -> Result<(), LatticeError> {
        if v.rank() != self.rank {
            return Err(LatticeError::Dimension {
                expected: self.rank,
                got: v.rank(),
            });
        }
        Ok(())
    }

    /// `alpha_check = 2 alpha / <alpha, alpha>` for the root at `index`.
    pub fn coroot(&self, index: usize) -> Result<WeightVector, LatticeError> {
        let root = self.roots.get(index).ok_or(LatticeError::InvalidIndex(index))?;
        Ok(coroot_of(self, &root.coords))
    }

    /// Generators of the minimal cone: the coroots of `Delta_n^+`.
    pub fn cone_generators(&self) -> Vec<WeightVector> {
        self.noncompact_positive().map(|r| coroot_of(self, &r.coords)).collect()
    }

    /// Membership of `v` in the open minimal cone, or in its closure.
    pub fn in_minimal_cone(&self, v: &WeightVector, closure: bool) -> Result<bool, LatticeError> {
        self.check_dim(v)?;
        let gens = self.cone_generators();
        Ok(if closure {
            in_closed_cone(&gens, v)
        } else {
            open_cone_certificate(&gens, v).is_some()
        })
    }

    /// Weights with `<omega_i, alpha_j> / <alpha_j, alpha_j> = delta_ij`.
    pub fn fundamental_weights(&self) -> Result<Vec<WeightVector>, LatticeError> {
        // Row j of the system is (G alpha_j)^T.
        let rows: Vec<Vec<Q>> = self
            .simple_roots()
            .map(|a| gram_apply(&self.gram, &a.coords.0))
            .collect();
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let rhs: Vec<Q> = self
                .simple_roots()
                .enumerate()
                .map(|(j, a)| if i == j { self.inner(&a.coords, &a.coords) } else { Q::zero() })
                .collect();
            let w = solve(&rows, &rhs).ok_or(LatticeError::Singular("fundamental weights"))?;
            out.push(WeightVector(w));
        }
        Ok(out)
    }

    /// Coordinates of `lambda` in the basis of fundamental weights.
    pub fn omega_coordinates(&self, lambda: &WeightVector) -> Result<Vec<Q>, LatticeError> {
        self.check_dim(lambda)?;
        Ok(self
            .simple_roots()
            .map(|a| self.inner(lambda, &a.coords) / self.inner(&a.coords, &a.coords))
            .collect())
    }

    /// `rho = 1/2 sum_{alpha in Delta^+} m_alpha alpha`.
    pub fn rho(&self) -> WeightVector {
        let mut acc = WeightVector::zero(self.rank);
        for r in self.roots.iter().filter(|r| r.positive) {
            acc = &acc + &r.coords.scale(&Q::from_integer(r.multiplicity.into()));
        }
        acc.scale(&q(1, 2))
    }

    /// `rho(c) = 1/2 sum_{alpha in Sigma^+} alpha`; equal-rank data only.
    pub fn rho_c(&self) -> Result<WeightVector, LatticeError> {
        let sigma = self
            .sigma_plus
            .as_ref()
            .ok_or(LatticeError::Unsupported("rho(c) needs sigma_plus (equal-rank datum)"))?;
        let mut acc = WeightVector::zero(self.rank);
        for s in sigma {
            acc = &acc + s;
        }
        Ok(acc.scale(&q(1, 2)))
    }

    pub fn classify(&self, lambda: &WeightVector) -> Result<LatticeClass, LatticeError> {
        self.check_dim(lambda)?;
        let lambda_0 = self.compact_positive().all(|a| !self.inner(lambda, &a.coords).is_positive());
        let lambda_ge0 = lambda_0
            && self
                .noncompact_positive()
                .all(|a| !self.eval_on_coroot(lambda, &a.coords).is_negative());

        let k = self.omega_coordinates(lambda)?;
        let lambda_gt0 = k.iter().all(|c| c.is_integer() && !c.is_negative())
            && k[self.noncompact_simple].is_positive();

        let rho = self.rho();
        let shifted = lambda - &rho;
        let shifted2 = lambda - &rho.scale(&q(2, 1));
        let lambda_2 = lambda_gt0
            && self
                .noncompact_positive()
                .all(|a| self.inner(&shifted, &a.coords).is_positive());
        let lambda_1 = lambda_gt0
            && self
                .noncompact_positive()
                .all(|a| self.inner(&shifted2, &a.coords).is_positive());
        let lambda_c = lambda_2
            && self.noncompact_positive().all(|a| {
                let bound = q(2, 1) - Q::from_integer(a.multiplicity.into());
                self.eval_on_coroot(&shifted, &a.coords) > bound
            });

        let lambda_sd = match &self.sigma_plus {
            None => None,
            Some(sigma) => {
                let rc = self.rho_c()?;
                let diff = lambda - &rc;
                let ok = sigma
                    .iter()
                    .filter(|s| self.kind_of(s) == Some(RootKind::Noncompact))
                    .all(|s| self.inner(&diff, s).is_positive());
                Some(lambda_0 && ok)
            }
        };

        Ok(LatticeClass {
            lambda_0,
            lambda_ge0,
            lambda_gt0,
            lambda_1,
            lambda_2,
            lambda_sd,
            lambda_c,
        })
    }

    fn kind_of(&self, v: &WeightVector) -> Option<RootKind> {
        self.roots.iter().find(|r| r.coords == *v).map(|r| r.kind)
    }

    /// `d(lambda) = c * prod_{alpha in Sigma^+} <lambda - rho(c), alpha>`.
    pub fn formal_dimension(&self, lambda: &WeightVector, c: &Q) -> Result<Q, LatticeError> {
        self.check_dim(lambda)?;
        let sigma = self
            .sigma_plus
            .as_ref()
            .ok_or(LatticeError::Unsupported("formal dimension needs sigma_plus (equal-rank datum)"))?;
        let diff = lambda - &self.rho_c()?;
        Ok(sigma.iter().fold(c.clone(), |acc, s| acc * self.inner(&diff, s)))
    }

    /// All `sum k_i omega_i` with `|k_i| <= bound`, in lexicographic order of `k`.
    pub fn enumerate_weights(&self, bound: u32) -> Result<Vec<WeightVector>, LatticeError> {
        let omegas = self.fundamental_weights()?;
        let b = bound as i64;
        let mut out = Vec::new();
        let mut k = vec![-b; self.rank];
        loop {
            let mut w = WeightVector::zero(self.rank);
            for (ki, om) in k.iter().zip(&omegas) {
                w = &w + &om.scale(&Q::from_integer((*ki).into()));
            }
            out.push(w);
            // odometer
            let mut pos = self.rank;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                if k[pos] < b {
                    k[pos] += 1;
                    for later in k.iter_mut().skip(pos + 1) {
                        *later = -b;
                    }
                    break;
                }
            }
        }
    }

    /// The group generated by reflections in compact roots, as a list of
    /// rational matrices acting on coordinate vectors (column convention).
    pub fn compact_weyl_group(&self) -> Vec<Vec<Vec<Q>>> {
        let gens: Vec<Vec<Vec<Q>>> = self
            .compact_positive()
            .map(|b| {
                (0..self.rank)
                    .map(|i| {
                        let mut e = WeightVector::zero(self.rank);
                        e.0[i] = Q::one();
                        self.reflect(&e, &b.coords).0
                    })
                    .collect::<Vec<_>>()
            })
            .map(|cols| transpose(&cols))
            .collect();
        let id: Vec<Vec<Q>> = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect();
        let mut group = vec![id.clone()];
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for s in &gens {
                let h = mat_mul(s, &g);
                if !group.contains(&h) {
                    group.push(h.clone());
                    frontier.push(h);
                }
            }
        }
        group
    }

    /// The `W_k`-orbit of the coroot of a long root in `Delta_n^+`.
    pub fn long_coroot_orbit(&self) -> Vec<WeightVector> {
        let long = self
            .noncompact_positive()
            .max_by(|a, b| self.inner(&a.coords, &a.coords).cmp(&self.inner(&b.coords, &b.coords)))
            .expect("a valid datum has a noncompact positive root");
        let check = coroot_of(self, &long.coords);
        let mut orbit: Vec<WeightVector> = Vec::new();
        for g in self.compact_weyl_group() {
            let img = WeightVector(mat_vec(&g, &check.0));
            if !orbit.contains(&img) {
                orbit.push(img);
            }
        }
        orbit
    }
}

fn invariant(invariant: &'static str, detail: String) -> LatticeError {
    LatticeError::Invariant { invariant, detail }
}

fn coroot_of(datum: &RootDatum, alpha: &WeightVector) -> WeightVector {
    let norm = datum.inner(alpha, alpha);
    alpha.scale(&(q(2, 1) / norm))
}

/// Closed cone membership: `v = sum c_i g_i` with `c_i >= 0`.
pub fn in_closed_cone(gens: &[WeightVector], v: &WeightVector) -> bool {
    let a = transpose(&gens.iter().map(|g| g.0.clone()).collect::<Vec<_>>());
    let a = if gens.is_empty() { vec![Vec::new(); v.rank()] } else { a };
    lp::feasible_point(&a, &v.0).is_some()
}

/// Open cone membership: `v = sum c_i g_i` with every `c_i > 0`.
///
/// Maximizes the smallest coefficient `eps` (capped at 1) by an exact LP;
/// returns the optimal `eps` when it is positive. `1/eps` rounded up is a
/// valid integer `N` with all coefficients at least `1/N`.
pub fn open_cone_certificate(gens: &[WeightVector], v: &WeightVector) -> Option<Q> {
    if gens.is_empty() {
        return None;
    }
    let m = v.rank();
    let n = gens.len();
    // variables: d_1..d_n (c_i = d_i + eps), eps, slack with eps + slack = 1
    let mut a = vec![vec![Q::zero(); n + 2]; m + 1];
    for (j, g) in gens.iter().enumerate() {
        for i in 0..m {
            a[i][j] = g.0[i].clone();
            a[i][n] += &g.0[i];
        }
    }
    a[m][n] = Q::one();
    a[m][n + 1] = Q::one();
    let mut b = v.0.clone();
    b.push(Q::one());
    let mut c = vec![Q::zero(); n + 2];
    c[n] = Q::one();
    match maximize(&a, &b, &c) {
        LpOutcome::Optimal { value, .. } if value.is_positive() => Some(value),
        _ => None,
    }
}

fn gram_apply(gram: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    gram.iter()
        .map(|row| row.iter().zip(v).map(|(g, x)| g * x).sum())
        .collect()
}

fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = b[0].len();
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum()).collect())
        .collect()
}

fn mat_vec(a: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Solves the square system `a x = b` exactly; `None` when singular.
fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(p, col);
        let inv = Q::one() / &m[col][col];
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let delta = &f * &m[col][c];
                    m[r][c] -= delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

#[cfg(test)]
mod tests;
