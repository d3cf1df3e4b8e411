// SPDX-License-Identifier: Apache-2.0

//! Hypergraph PageRank as a QDSFM problem, sweep cuts and the
//! Lovász-Simonovits curve.

use super::hypergraph::Hypergraph;
use crate::error::{Error, Result};
use crate::solver::{rcd_solve, SolveReport, SolverConfig};
use crate::submodular::ProblemInstance;
use crate::vector::argsort_desc;

#[derive(Debug, Clone)]
pub struct PageRankResult {
    pub p: Vec<f64>,
    pub report: SolveReport,
}

/// `min_x ||x - D^-1 p0||_W^2 + sum_r w_r f_r(x)^2` with
/// `W = alpha / (1 - alpha) D`.
pub fn pagerank_instance(hg: &Hypergraph, alpha: f64, p0: &[f64]) -> Result<ProblemInstance> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    if p0.len() != hg.n() {
        return Err(Error::Domain(format!(
            "p0 has length {}, expected {}",
            p0.len(),
            hg.n()
        )));
    }
    if let Some(i) = p0.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(Error::Domain(format!("p0[{i}] = {} must be nonnegative", p0[i])));
    }
    let d = hg.degrees();
    let beta = alpha / (1.0 - alpha);
    let a = p0.iter().zip(d).map(|(p, d)| p / d).collect();
    let w = d.iter().map(|d| beta * d).collect();
    ProblemInstance::new(a, w, hg.to_atoms()?)
}

/// PageRank vector `pr(alpha, p0)` solved by RCD; returns `p = D x`.
pub fn pagerank(hg: &Hypergraph, alpha: f64, p0: &[f64], config: &SolverConfig) -> Result<PageRankResult> {
    let inst = pagerank_instance(hg, alpha, p0)?;
    let report = rcd_solve(&inst, config)?;
    let p = report.x.iter().zip(hg.degrees()).map(|(x, d)| x * d).collect();
    Ok(PageRankResult { p, report })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Vertices by descending `p_i / d_i`, ties by index.
    pub order: Vec<usize>,
    pub best_set: Vec<usize>,
    pub best_conductance: f64,
    /// `(j, conductance of the first j vertices)` for `j = 1..N-1`.
    pub per_prefix: Vec<(usize, f64)>,
}

fn normalized_order(hg: &Hypergraph, p: &[f64]) -> Result<Vec<usize>> {
    if p.len() != hg.n() {
        return Err(Error::Domain(format!("p has length {}, expected {}", p.len(), hg.n())));
    }
    let x: Vec<f64> = p.iter().zip(hg.degrees()).map(|(p, d)| p / d).collect();
    Ok(argsort_desc(&x))
}

/// Best prefix cut of the degree-normalized ordering, evaluated
/// incrementally in `O(sum_r |S_r|)`.
pub fn sweep_cut(hg: &Hypergraph, p: &[f64]) -> Result<SweepResult> {
    let order = normalized_order(hg, p)?;
    let n = hg.n();
    if n < 2 {
        return Err(Error::Domain("sweep cut needs at least two vertices".to_string()));
    }
    let m = hg.total_volume();
    let edges = hg.edges();
    let mut heads_in = vec![0usize; edges.len()];
    let mut tails_out: Vec<usize> = edges.iter().map(|e| e.tail().len()).collect();
    let mut boundary = 0.0;
    let mut crossing = 0usize;
    let mut volume = 0.0;
    let mut per_prefix = Vec::with_capacity(n - 1);
    let (mut best_j, mut best) = (1, f64::INFINITY);
    for (j, &v) in order.iter().enumerate().take(n - 1) {
        volume += hg.degrees()[v];
        for &(r, in_head, in_tail) in hg.incident(v) {
            let was = heads_in[r] > 0 && tails_out[r] > 0;
            if in_head {
                heads_in[r] += 1;
            }
            if in_tail {
                tails_out[r] -= 1;
            }
            let is = heads_in[r] > 0 && tails_out[r] > 0;
            match (was, is) {
                (false, true) => {
                    boundary += edges[r].weight();
                    crossing += 1;
                }
                (true, false) => {
                    boundary -= edges[r].weight();
                    crossing -= 1;
                }
                _ => {}
            }
        }
        if crossing == 0 {
            boundary = 0.0;
        }
        let phi = boundary.max(0.0) / volume.min(m - volume);
        per_prefix.push((j + 1, phi));
        if phi < best {
            best = phi;
            best_j = j + 1;
        }
    }
    let mut best_set = order[..best_j].to_vec();
    best_set.sort_unstable();
    Ok(SweepResult {
        order,
        best_set,
        best_conductance: best,
        per_prefix,
    })
}

/// Piecewise-linear curve through `(vol(S_j), p(S_j))`.
#[derive(Debug, Clone, PartialEq)]
pub struct LsCurve {
    /// Starts at `(0, 0)` and ends at `(vol(V), p(V))`.
    pub breakpoints: Vec<(f64, f64)>,
}

impl LsCurve {
    /// Linear interpolation; arguments outside `[0, vol(V)]` are clamped.
    pub fn eval(&self, z: f64) -> f64 {
        let pts = &self.breakpoints;
        let (z_max, last) = pts[pts.len() - 1];
        if z <= 0.0 {
            return 0.0;
        }
        if z >= z_max {
            return last;
        }
        let k = pts.partition_point(|&(zk, _)| zk < z);
        let (z1, v1) = pts[k];
        let (z0, v0) = pts[k - 1];
        if z1 == z0 {
            return v1;
        }
        v0 + (v1 - v0) * (z - z0) / (z1 - z0)
    }
}

pub fn ls_curve(hg: &Hypergraph, p: &[f64]) -> Result<LsCurve> {
    let order = normalized_order(hg, p)?;
    let mut breakpoints = Vec::with_capacity(order.len() + 1);
    breakpoints.push((0.0, 0.0));
    let (mut vol, mut mass) = (0.0, 0.0);
    for &v in &order {
        vol += hg.degrees()[v];
        mass += p[v];
        breakpoints.push((vol, mass));
    }
    Ok(LsCurve { breakpoints })
}
