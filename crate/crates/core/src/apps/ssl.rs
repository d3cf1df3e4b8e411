// SPDX-License-Identifier: Apache-2.0

//! Transductive semi-supervised learning on hypergraphs:
//!
//! ```text
//! min_x beta ||x - a||^2 + sum_r max_{i, j in S_r} (x_i / sqrt(n_i) - x_j / sqrt(n_j))^2
//! ```
//!
//! with a positive vertex measure `n`. Substituting `x' = x / sqrt(n)`
//! gives a QDSFM instance with `W = beta diag(n)` and `a' = a / sqrt(n)`.

use super::hypergraph::Hypergraph;
use crate::error::{Error, Result};
use crate::par;
use crate::solver::{solve, Method, SolveReport, SolverConfig};
use crate::submodular::ProblemInstance;
use crate::vector::argsort_desc;

/// Denominator of the Cheeger ratio over the incidence masses
/// `sum_r |S_r ∩ S_j|` and `sum_r |S_r ∩ complement|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CheegerDenominator {
    /// Smaller side, as in ordinary conductance.
    #[default]
    Min,
    /// Larger side.
    Max,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheegerCut {
    /// Vertices by descending `x_i / sqrt(n_i)`, ties by index.
    pub order: Vec<usize>,
    /// Sorted members of the winning prefix.
    pub set: Vec<usize>,
    pub score: f64,
}

#[derive(Debug, Clone)]
pub struct SslResult {
    pub scores: Vec<f64>,
    /// `+1` where the score is nonnegative, `-1` otherwise.
    pub sign_labels: Vec<i8>,
    pub report: SolveReport,
}

fn check_measure(hg: &Hypergraph, w_norm: &[f64]) -> Result<()> {
    if w_norm.len() != hg.n() {
        return Err(Error::Domain(format!(
            "vertex measure has length {}, expected {}",
            w_norm.len(),
            hg.n()
        )));
    }
    if let Some(i) = w_norm.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::Domain(format!("vertex measure entry {i} must be positive")));
    }
    Ok(())
}

/// The rescaled QDSFM instance for target `a`.
pub fn ssl_instance(hg: &Hypergraph, a: &[f64], beta: f64, w_norm: &[f64]) -> Result<ProblemInstance> {
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::Domain(format!("beta = {beta} must be positive")));
    }
    check_measure(hg, w_norm)?;
    if a.len() != hg.n() {
        return Err(Error::Domain(format!("target has length {}, expected {}", a.len(), hg.n())));
    }
    let a_scaled = a.iter().zip(w_norm).map(|(a, n)| a / n.sqrt()).collect();
    let w = w_norm.iter().map(|n| beta * n).collect();
    ProblemInstance::new(a_scaled, w, hg.to_atoms()?)
}

fn solve_scores(
    hg: &Hypergraph,
    a: &[f64],
    beta: f64,
    w_norm: &[f64],
    method: Method,
    config: &SolverConfig,
) -> Result<(Vec<f64>, SolveReport)> {
    let inst = ssl_instance(hg, a, beta, w_norm)?;
    let report = solve(&inst, method, config)?;
    let scores = report.x.iter().zip(w_norm).map(|(x, n)| x * n.sqrt()).collect();
    Ok((scores, report))
}

/// Two-class problem; `labels[i]` is `+1`, `-1` or `0` for unlabeled.
pub fn ssl_solve(
    hg: &Hypergraph,
    labels: &[i8],
    beta: f64,
    w_norm: &[f64],
    method: Method,
    config: &SolverConfig,
) -> Result<SslResult> {
    if labels.len() != hg.n() {
        return Err(Error::Domain(format!("labels have length {}, expected {}", labels.len(), hg.n())));
    }
    if let Some(i) = labels.iter().position(|l| !matches!(l, -1..=1)) {
        return Err(Error::Domain(format!("label {} at vertex {i} is not -1, 0 or 1", labels[i])));
    }
    if !labels.contains(&1) || !labels.contains(&-1) {
        return Err(Error::Domain("both classes need at least one labeled vertex".to_string()));
    }
    let a: Vec<f64> = labels.iter().map(|&l| l as f64).collect();
    let (scores, report) = solve_scores(hg, &a, beta, w_norm, method, config)?;
    let sign_labels = scores.iter().map(|&x| if x >= 0.0 { 1 } else { -1 }).collect();
    Ok(SslResult {
        scores,
        sign_labels,
        report,
    })
}

/// One-vs-rest over `classes` classes; returns the argmax class per vertex
/// (ties to the lower class) and the per-class scores. Classes are solved
/// concurrently when `config.parallel` is set.
pub fn ssl_multiclass(
    hg: &Hypergraph,
    labels: &[Option<usize>],
    classes: usize,
    beta: f64,
    w_norm: &[f64],
    method: Method,
    config: &SolverConfig,
) -> Result<(Vec<usize>, Vec<Vec<f64>>)> {
    if labels.len() != hg.n() {
        return Err(Error::Domain(format!("labels have length {}, expected {}", labels.len(), hg.n())));
    }
    for k in 0..classes {
        if !labels.contains(&Some(k)) {
            return Err(Error::Domain(format!("class {k} has no labeled vertex")));
        }
    }
    if let Some(i) = labels.iter().position(|l| l.is_some_and(|k| k >= classes)) {
        return Err(Error::Domain(format!("vertex {i} has a label outside [0, {classes})")));
    }
    let per_class = par::map_indexed(classes, config.parallel, |k| {
        let a: Vec<f64> = labels.iter().map(|&l| if l == Some(k) { 1.0 } else { 0.0 }).collect();
        solve_scores(hg, &a, beta, w_norm, method, config).map(|(s, _)| s)
    });
    let scores = per_class.into_iter().collect::<Result<Vec<_>>>()?;
    let predicted = (0..hg.n())
        .map(|i| {
            (0..classes)
                .fold((0, f64::NEG_INFINITY), |(bk, bv), k| {
                    if scores[k][i] > bv {
                        (k, scores[k][i])
                    } else {
                        (bk, bv)
                    }
                })
                .0
        })
        .collect();
    Ok((predicted, scores))
}

/// Best prefix of the ordering by `x_i / sqrt(n_i)` under the ratio
/// (number of cut hyperedges) / (incidence mass of one side).
pub fn cheeger_classify(
    hg: &Hypergraph,
    x: &[f64],
    w_norm: &[f64],
    denominator: CheegerDenominator,
) -> Result<CheegerCut> {
    check_measure(hg, w_norm)?;
    if x.len() != hg.n() || hg.n() < 2 {
        return Err(Error::Domain("scores must cover at least two vertices".to_string()));
    }
    let normalized: Vec<f64> = x.iter().zip(w_norm).map(|(x, n)| x / n.sqrt()).collect();
    let order = argsort_desc(&normalized);
    let edges = hg.edges();
    let total_mass: f64 = edges.iter().map(|e| e.members().len() as f64).sum();
    let mut heads_in = vec![0usize; edges.len()];
    let mut tails_out: Vec<usize> = edges.iter().map(|e| e.tail().len()).collect();
    let mut cut = 0i64;
    let mut mass = 0.0;
    let (mut best_j, mut best) = (1, f64::INFINITY);
    for (j, &v) in order.iter().enumerate().take(hg.n() - 1) {
        mass += hg.incident(v).len() as f64;
        for &(r, in_head, in_tail) in hg.incident(v) {
            let was = heads_in[r] > 0 && tails_out[r] > 0;
            if in_head {
                heads_in[r] += 1;
            }
            if in_tail {
                tails_out[r] -= 1;
            }
            let is = heads_in[r] > 0 && tails_out[r] > 0;
            cut += is as i64 - was as i64;
        }
        let denom = match denominator {
            CheegerDenominator::Min => mass.min(total_mass - mass),
            CheegerDenominator::Max => mass.max(total_mass - mass),
        };
        let score = cut as f64 / denom;
        if score < best {
            best = score;
            best_j = j + 1;
        }
    }
    let mut set = order[..best_j].to_vec();
    set.sort_unstable();
    Ok(CheegerCut { order, set, score: best })
}

/// `+1` inside the cut, `-1` outside.
pub fn cut_labels(n: usize, cut: &CheegerCut) -> Vec<i8> {
    let mut labels = vec![-1; n];
    for &v in &cut.set {
        labels[v] = 1;
    }
    labels
}

/// Fraction of vertices whose prediction differs from the truth.
pub fn classification_error<T: PartialEq>(predicted: &[T], truth: &[T]) -> f64 {
    let wrong = predicted.iter().zip(truth).filter(|(p, t)| p != t).count();
    wrong as f64 / truth.len() as f64
}
