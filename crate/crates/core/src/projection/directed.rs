// SPDX-License-Identifier: Apache-2.0

//! Exact projection for cut-type atoms (graph edges, undirected and
//! directed hyperedges).
//!
//! The conic projection is solved through its primal counterpart
//!
//! ```text
//! min_z  1/2 ||z - b||_W^2 + 1/2 f(z)^2,   W = W~^-1,  b = 1/2 W~ a,
//! f(z) = sqrt(w) (max_{i in H} z_i - min_{j in T} z_j)_+
//! ```
//!
//! and mapped back through `y = a - 2 W z`, `phi = 2 f(z)`. At the optimum
//! the heads above a level `gamma` are clipped down to it and the tails
//! below a level `delta` are clipped up, with
//!
//! ```text
//! w (gamma - delta) = sum_{i in H, b_i > gamma} W_ii (b_i - gamma)
//!                   = sum_{j in T, b_j < delta} W_jj (delta - b_j).
//! ```
//!
//! Writing `t` for this common value, `gamma(t)` and `delta(t)` are
//! piecewise linear and the balance condition is a line search over `t`
//! through the merged breakpoints of the sorted heads and tails.

use super::{ProjectionResult, ProjectionStatus};
use crate::error::{Error, Result};
use crate::submodular::SubmodularAtom;

/// Exact projection onto the cone of a cut-type atom in `O(k log k)`.
pub fn exact_directed(atom: &SubmodularAtom, a: &[f64], w_tilde: &[f64]) -> Result<ProjectionResult> {
    if !atom.is_cut() {
        return Err(Error::Config(format!(
            "exact projection needs a graph edge or hyperedge, got {:?}",
            atom.kind()
        )));
    }
    let k = atom.len();
    let c2 = atom.weight();
    let b: Vec<f64> = a.iter().zip(w_tilde).map(|(ai, wt)| 0.5 * wt * ai).collect();
    // metric of the primal problem
    let wp: Vec<f64> = w_tilde.iter().map(|wt| 1.0 / wt).collect();

    let mut heads: Vec<usize> = (0..k).filter(|&i| atom.head_mask()[i]).collect();
    let mut tails: Vec<usize> = (0..k).filter(|&i| atom.tail_mask()[i]).collect();
    heads.sort_by(|&i, &j| b[j].total_cmp(&b[i]).then(i.cmp(&j)));
    tails.sort_by(|&i, &j| b[i].total_cmp(&b[j]).then(i.cmp(&j)));

    let gamma0 = b[heads[0]];
    let delta0 = b[tails[0]];
    if gamma0 <= delta0 || c2 == 0.0 {
        // inactive: z = b, y = 0, phi = 0
        return Ok(ProjectionResult::finish(
            a,
            w_tilde,
            vec![0.0; k],
            0.0,
            ProjectionStatus::Converged,
            0,
            0,
            Vec::new(),
        ));
    }

    // A(gamma) = ph - wh gamma on the current head segment,
    // B(delta) = wt delta - qt on the current tail segment.
    let (mut kh, mut ph, mut wh) = (1usize, wp[heads[0]] * b[heads[0]], wp[heads[0]]);
    let (mut kt, mut qt, mut wt) = (1usize, wp[tails[0]] * b[tails[0]], wp[tails[0]]);
    let mut steps = 0usize;
    let t = loop {
        let t_head = if kh < heads.len() {
            ph - wh * b[heads[kh]]
        } else {
            f64::INFINITY
        };
        let t_tail = if kt < tails.len() {
            wt * b[tails[kt]] - qt
        } else {
            f64::INFINITY
        };
        // root of c2 (gamma(t) - delta(t)) = t on this segment
        let t_star = c2 * (ph / wh - qt / wt) / (1.0 + c2 / wh + c2 / wt);
        let t_next = t_head.min(t_tail);
        if t_star <= t_next {
            break t_star.max(0.0);
        }
        steps += 1;
        // ties advance the head side first
        if t_head <= t_tail {
            let i = heads[kh];
            ph += wp[i] * b[i];
            wh += wp[i];
            kh += 1;
        } else {
            let j = tails[kt];
            qt += wp[j] * b[j];
            wt += wp[j];
            kt += 1;
        }
    };
    let gamma = (ph - t) / wh;
    let delta = (t + qt) / wt;

    let mut y = vec![0.0; k];
    for i in 0..k {
        let z = if atom.head_mask()[i] && b[i] > gamma {
            gamma
        } else if atom.tail_mask()[i] && b[i] < delta {
            delta
        } else {
            b[i]
        };
        // y = a - 2 W z = 2 W (b - z)
        y[i] = 2.0 * wp[i] * (b[i] - z);
    }
    let phi = 2.0 * atom.scale() * (gamma - delta).max(0.0);
    Ok(ProjectionResult::finish(
        a,
        w_tilde,
        y,
        phi,
        ProjectionStatus::Converged,
        steps,
        0,
        Vec::new(),
    ))
}
