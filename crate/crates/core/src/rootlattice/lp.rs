//! A small dense simplex solver over exact rationals.
//!
//! Problems are given in equality form `A x = b, x >= 0` and are solved with
//! the two-phase method under Bland's rule, so termination is guaranteed and
//! every pivot is exact.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { x: Vec<Q>, value: Q },
}

struct Tableau {
    rows: Vec<Vec<Q>>, // each row: coefficients followed by rhs
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Q {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = Q::one() / &self.rows[pr][pc];
        for v in self.rows[pr].iter_mut() {
            *v = &*v * &inv;
        }
        let prow = self.rows[pr].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr || row[pc].is_zero() {
                continue;
            }
            let factor = row[pc].clone();
            for (v, p) in row.iter_mut().zip(prow.iter()) {
                if !p.is_zero() {
                    *v = &*v - &factor * p;
                }
            }
        }
        self.basis[pr] = pc;
    }

    /// Maximizes `cost . x` over the current basis, restricted to the columns
    /// in `allowed`. Returns false when the objective is unbounded.
    fn optimize(&mut self, cost: &[Q], allowed: &[bool]) -> bool {
        loop {
            // reduced cost c_j - c_B B^-1 A_j
            let mut entering = None;
            for j in 0..self.ncols {
                if !allowed[j] || self.basis.contains(&j) {
                    continue;
                }
                let mut rc = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !self.rows[r][j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &self.rows[r][j];
                    }
                }
                if rc.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(pc) = entering else { return true };

            let mut leave: Option<(usize, Q)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][pc];
                if a.is_positive() {
                    let ratio = self.rhs(r) / a;
                    let better = match &leave {
                        None => true,
                        Some((lr, best)) => {
                            ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((pr, _)) = leave else { return false };
            self.pivot(pr, pc);
        }
    }
}

/// Maximizes `c . x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert!(a.iter().all(|row| row.len() == n), "ragged constraint matrix");
    assert_eq!(b.len(), m);

    // Phase 1: one artificial per row, rows normalized to b >= 0.
    let ncols = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut r: Vec<Q> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        r.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(r);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };
    let mut phase1_cost = vec![Q::zero(); ncols];
    for v in phase1_cost.iter_mut().skip(n) {
        *v = -Q::one();
    }
    let all = vec![true; ncols];
    t.optimize(&phase1_cost, &all);
    let infeasibility: Q = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bcol)| bcol >= n)
        .map(|(r, _)| t.rhs(r).clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining (zero-valued) artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(pc) = (0..n).find(|&j| !t.rows[r][j].is_zero() && !t.basis.contains(&j)) {
                t.pivot(r, pc);
            }
        }
    }

    // Phase 2 over the original columns; artificials stuck in the basis sit on
    // redundant rows and stay at zero.
    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| Q::zero()));
    let allowed: Vec<bool> = (0..ncols).map(|j| j < n).collect();
    if !t.optimize(&cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Q::zero(); n];
    for (r, &bcol) in t.basis.iter().enumerate() {
        if bcol < n {
            x[bcol] = t.rhs(r).clone();
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}

/// Feasibility of `A x = b, x >= 0`, returning a witness.
pub fn feasible_point(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.first().map_or(0, Vec::len);
    match maximize(a, b, &vec![Q::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn small_maximization() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![
            vec![q(1, 1), q(2, 1), q(1, 1), q(0, 1)],
            vec![q(3, 1), q(1, 1), q(0, 1), q(1, 1)],
        ];
        let b = vec![q(4, 1), q(6, 1)];
        let c = vec![q(1, 1), q(1, 1), q(0, 1), q(0, 1)];
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, q(14, 5));
                assert_eq!(x[0], q(8, 5));
                assert_eq!(x[1], q(6, 5));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x = -1 with x >= 0
        assert_eq!(maximize(&[vec![q(1, 1)]], &[q(-1, 1)], &[q(0, 1)]), LpOutcome::Infeasible);
        // x - y = 0, max x
        let out = maximize(&[vec![q(1, 1), q(-1, 1)]], &[q(0, 1)], &[q(1, 1), q(0, 1)]);
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_handled() {
        let a = vec![vec![q(1, 1), q(1, 1)], vec![q(2, 1), q(2, 1)]];
        let b = vec![q(1, 1), q(2, 1)];
        let x = feasible_point(&a, &b).expect("feasible");
        assert_eq!(&x[0] + &x[1], q(1, 1));
    }
}
