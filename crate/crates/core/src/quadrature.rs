//! Quadrature rules for integrals over `X` and over the one-dimensional fibers.
//!
//! Integrals over `X` use composite Gauss–Legendre panels in `t` and the
//! periodic trapezoid rule in `theta`, with the invariant density `cosh t`
//! folded into the weights.

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::hyperboloid::{invariant_density, RVec3};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid quadrature parameter {name} = {value}: {reason}")]
    Invalid {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
}

/// Grid and truncation parameters for the integral over `X` and the fiber
/// integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub t_max: f64,
    pub n_t: usize,
    pub n_theta: usize,
    pub fiber_t_max: f64,
    pub fiber_n: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            t_max: 12.0,
            n_t: 480,
            n_theta: 256,
            fiber_t_max: 14.0,
            fiber_n: 600,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        let bad = |name, value: f64, reason| Err(QuadratureError::Invalid { name, value, reason });
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return bad("t_max", self.t_max, "must be positive and finite");
        }
        if !(self.fiber_t_max.is_finite() && self.fiber_t_max > 0.0) {
            return bad("fiber_t_max", self.fiber_t_max, "must be positive and finite");
        }
        if self.n_t < 32 || !self.n_t.is_multiple_of(2) {
            return bad("n_t", self.n_t as f64, "must be even and at least 32");
        }
        if self.n_theta < 32 {
            return bad("n_theta", self.n_theta as f64, "must be at least 32");
        }
        if self.fiber_n < 32 || !self.fiber_n.is_multiple_of(2) {
            return bad("fiber_n", self.fiber_n as f64, "must be even and at least 32");
        }
        Ok(())
    }

    /// The same truncations with every node count doubled.
    pub fn doubled(&self) -> Self {
        QuadratureSpec {
            n_t: 2 * self.n_t,
            n_theta: 2 * self.n_theta,
            fiber_n: 2 * self.fiber_n,
            ..*self
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let legendre = |x: f64| {
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let k = k as f64;
            let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if n == 1 {
            (x, 1.0)
        } else {
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            (p1, dp)
        }
    };
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Panel order used for `n` composite nodes: the largest divisor of `n` in
/// `[2, 32]`.
pub fn panel_order(n: usize) -> usize {
    (2..=32.min(n)).rev().find(|&d| n.is_multiple_of(d)).unwrap_or(1)
}

/// Composite Gauss–Legendre rule on `[-a, a]`, grouped by panel.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panel_len: usize,
}

impl CompositeRule {
    pub fn symmetric(a: f64, n: usize) -> Self {
        let order = panel_order(n);
        let panels = n / order;
        let (x, w) = gauss_legendre(order);
        let width = 2.0 * a / panels as f64;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for p in 0..panels {
            let lo = -a + p as f64 * width;
            let (mid, half) = (lo + width / 2.0, width / 2.0);
            for k in 0..order {
                nodes.push(mid + half * x[k]);
                weights.push(half * w[k]);
            }
        }
        CompositeRule {
            nodes,
            weights,
            panel_len: order,
        }
    }

    pub fn panels(&self) -> usize {
        self.nodes.len() / self.panel_len
    }
}

/// Nodes of the tensor rule over `X` with weights including `cosh t` and
/// `2 pi / n_theta`.
#[derive(Debug, Clone)]
pub struct XGrid {
    pub points: Vec<RVec3>,
    pub weights: Vec<f64>,
}

impl XGrid {
    pub fn new(q: &QuadratureSpec) -> Result<Self, QuadratureError> {
        q.validate()?;
        let rule = CompositeRule::symmetric(q.t_max, q.n_t);
        let dtheta = 2.0 * PI / q.n_theta as f64;
        let trig: Vec<(f64, f64)> = (0..q.n_theta)
            .map(|j| {
                let th = j as f64 * dtheta;
                (th.cos(), th.sin())
            })
            .collect();
        let mut points = Vec::with_capacity(q.n_t * q.n_theta);
        let mut weights = Vec::with_capacity(q.n_t * q.n_theta);
        for (&t, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let (ch, sh) = (t.cosh(), t.sinh());
            let w = wt * invariant_density(t) * dtheta;
            for &(c, s) in &trig {
                points.push(RVec3([ch * c, ch * s, sh]));
                weights.push(w);
            }
        }
        Ok(XGrid { points, weights })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sum_j w_j f(x_j)`, accumulated in grid order.
    pub fn integrate(&self, mut f: impl FnMut(&RVec3) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(x, w)| w * f(x)).sum()
    }
}

/// A uniform `n_t x n_theta` grid of points of `X` with `|t| <= t_max`,
/// including both endpoints in `t`.
pub fn uniform_points(t_max: f64, n_t: usize, n_theta: usize) -> impl Iterator<Item = RVec3> {
    let dt = 2.0 * t_max / (n_t.max(2) - 1) as f64;
    let dtheta = 2.0 * PI / n_theta as f64;
    (0..n_t).flat_map(move |i| {
        let t = -t_max + i as f64 * dt;
        let (ch, sh) = (t.cosh(), t.sinh());
        (0..n_theta).map(move |j| {
            let th = j as f64 * dtheta;
            RVec3([ch * th.cos(), ch * th.sin(), sh])
        })
    })
}
