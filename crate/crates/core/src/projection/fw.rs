// SPDX-License-Identifier: Apache-2.0

//! Conic Frank-Wolfe: two active points per step, the current iterate and
//! the greedy vertex, recombined with nonnegative weights.

use super::{h_value, ProjectionOptions, ProjectionResult, ProjectionStatus};
use crate::submodular::SubmodularAtom;
use crate::vector::{wdot, wnorm_sq};

/// `argmin_{g1, g2 >= 0} ||g1 u + g2 v - b||^2` given the Gram entries
/// `uu, uv, vv` and `ub = <u, b>`, `vb = <v, b>`.
pub(crate) fn nonneg_pair(uu: f64, uv: f64, vv: f64, ub: f64, vb: f64) -> (f64, f64) {
    // objective up to the constant ||b||^2
    let obj = |g1: f64, g2: f64| g1 * g1 * uu + 2.0 * g1 * g2 * uv + g2 * g2 * vv - 2.0 * (g1 * ub + g2 * vb);
    let mut best = (0.0, 0.0);
    let mut best_val = 0.0;
    let mut consider = |g1: f64, g2: f64| {
        if g1 >= 0.0 && g2 >= 0.0 {
            let val = obj(g1, g2);
            if val < best_val {
                best_val = val;
                best = (g1, g2);
            }
        }
    };
    if uu > 0.0 {
        consider(ub / uu, 0.0);
    }
    if vv > 0.0 {
        consider(0.0, vb / vv);
    }
    let det = uu * vv - uv * uv;
    if det > 1e-14 * uu * vv {
        consider((ub * vv - vb * uv) / det, (vb * uu - ub * uv) / det);
    }
    best
}

/// Projects `a` onto the cone of `atom`'s base polytope by conic FW.
pub fn conic_fw(
    atom: &SubmodularAtom,
    a: &[f64],
    w_tilde: &[f64],
    opts: &ProjectionOptions,
) -> ProjectionResult {
    let k = atom.len();
    let cap = opts.max_iterations.unwrap_or(100 * k * k);
    let mut y = vec![0.0; k];
    let mut phi = 0.0;
    let mut dir = vec![0.0; k];
    let mut history = Vec::new();
    if opts.record_history {
        history.push(h_value(&y, phi, a, w_tilde));
    }

    let mut iters = 0usize;
    let status = loop {
        for i in 0..k {
            dir[i] = w_tilde[i] * (a[i] - y[i]);
        }
        let q = atom.greedy_lmo(&dir);
        let yq = wdot(&y, &q, w_tilde);
        let aq = wdot(a, &q, w_tilde);
        if yq - aq + phi >= -opts.delta {
            break ProjectionStatus::Converged;
        }
        if iters >= cap {
            break ProjectionStatus::MaxIterations;
        }
        iters += 1;

        // u = (y, phi), v = (q, 1), target (a, 0)
        let uu = wnorm_sq(&y, w_tilde) + phi * phi;
        let uv = yq + phi;
        let vv = wnorm_sq(&q, w_tilde) + 1.0;
        let ub = wdot(&y, a, w_tilde);
        let (g1, g2) = nonneg_pair(uu, uv, vv, ub, aq);
        for i in 0..k {
            y[i] = g1 * y[i] + g2 * q[i];
        }
        phi = g1 * phi + g2;
        if opts.record_history {
            history.push(h_value(&y, phi, a, w_tilde));
        }
    };

    ProjectionResult::finish(a, w_tilde, y, phi, status, iters, 0, history)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::{conic_mnp, ProjectionOptions};

    #[test]
    fn zero_target_returns_immediately() {
        let atom = SubmodularAtom::graph_edge(1.0, 0, 1).unwrap();
        let r = conic_fw(&atom, &[0.0, 0.0], &[1.0, 1.0], &ProjectionOptions::default());
        assert_eq!(r.major_loops, 0);
        assert_eq!((r.y.clone(), r.phi), (vec![0.0, 0.0], 0.0));
        assert_eq!(r.status, ProjectionStatus::Converged);
    }

    #[test]
    fn pair_solver_matches_grid_search() {
        let cases = [
            (2.0, 0.5, 1.0, 1.0, -0.3),
            (1.0, -0.9, 1.0, 0.2, 0.4),
            (0.0, 0.0, 3.0, 0.0, 1.5),
            (1.0, 1.0, 1.0, 0.5, 0.5),
        ];
        for (uu, uv, vv, ub, vb) in cases {
            let obj = |g1: f64, g2: f64| g1 * g1 * uu + 2.0 * g1 * g2 * uv + g2 * g2 * vv - 2.0 * (g1 * ub + g2 * vb);
            let (g1, g2) = nonneg_pair(uu, uv, vv, ub, vb);
            let mut grid_best = f64::INFINITY;
            for i in 0..=400 {
                for j in 0..=400 {
                    grid_best = grid_best.min(obj(i as f64 / 100.0, j as f64 / 100.0));
                }
            }
            assert!(obj(g1, g2) <= grid_best + 1e-12);
        }
    }

    #[test]
    fn graph_edge_rate_envelope() {
        let atom = SubmodularAtom::graph_edge(1.0, 0, 1).unwrap();
        let a = [1.0, -1.0];
        let w = [1.0, 1.0];
        let star = conic_mnp(&atom, &a, &w, &ProjectionOptions::with_delta(1e-12)).h_value;
        let r = conic_fw(
            &atom,
            &a,
            &w,
            &ProjectionOptions {
                delta: 1e-14,
                max_iterations: Some(200),
                record_history: true,
            },
        );
        // ||a||^2 = 2, Q^2 = 2
        for (k, h) in r.history.iter().enumerate() {
            assert!(h - star <= 2.0 * 2.0 * 2.0 / (k as f64 + 2.0) + 1e-10);
        }
        assert!((r.h_value - 2.0 / 3.0).abs() < 1e-9);
        assert!((r.phi - 2.0 / 3.0).abs() < 1e-6);
    }
}
