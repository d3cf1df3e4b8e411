// SPDX-License-Identifier: Apache-2.0

//! Dual solvers.
//!
//! With `y_r` in the cone `C_r` the dual problem reads
//!
//! ```text
//! min g(y, phi) = ||sum_r y_r - 2 W a||_{W^-1}^2 + sum_r phi_r^2
//! ```
//!
//! and a dual point maps back to `x = a - 1/2 W^-1 sum_r y_r`.

mod ap;
mod diagnostics;
mod rcd;

use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use ap::ap_solve;
pub use diagnostics::{mu_estimate, rho_squared, RhoMode};
pub use rcd::{rcd_solve, RcdStepper, StepOutcome};

use crate::error::{Error, Result};
use crate::projection::{Backend, ProjectionOptions, ORACLE_DELTA};
use crate::submodular::ProblemInstance;
use crate::vector::wnorm_sq;

/// Outer-loop algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Rcd,
    Ap,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Rcd => "rcd",
            Method::Ap => "ap",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rcd" => Ok(Method::Rcd),
            "ap" => Ok(Method::Ap),
            other => Err(Error::Config(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// RCD: single-atom updates. AP: full sweeps over all atoms.
    pub max_iterations: usize,
    pub gap_tolerance: f64,
    pub rng_seed: u64,
    /// `None` picks [`Backend::default_for`] per atom.
    pub backend: Option<Backend>,
    /// Gap evaluation cadence. `None` means `R` for RCD and 1 for AP.
    pub trace_every: Option<usize>,
    /// Tolerance handed to the iterative projection backends.
    pub projection_delta: f64,
    /// Fan out AP projections over threads (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_iterations: 100_000,
            gap_tolerance: 1e-9,
            rng_seed: 0,
            backend: None,
            trace_every: None,
            projection_delta: ORACLE_DELTA,
            parallel: true,
        }
    }
}

impl SolverConfig {
    pub(crate) fn validate(&self, instance: &ProblemInstance) -> Result<()> {
        if !(self.gap_tolerance > 0.0) {
            return Err(Error::Config(format!(
                "gap tolerance must be positive, got {}",
                self.gap_tolerance
            )));
        }
        if self.trace_every == Some(0) {
            return Err(Error::Config("trace_every must be at least 1".to_string()));
        }
        if !(self.projection_delta > 0.0) {
            return Err(Error::Config("projection delta must be positive".to_string()));
        }
        if self.backend == Some(Backend::Exact) {
            if let Some(r) = instance.atoms().iter().position(|a| !a.is_cut()) {
                return Err(Error::Config(format!(
                    "exact backend cannot project atom {r} of kind {:?}",
                    instance.atoms()[r].kind()
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn backends(&self, instance: &ProblemInstance) -> Vec<Backend> {
        instance
            .atoms()
            .iter()
            .map(|a| self.backend.unwrap_or_else(|| Backend::default_for(a)))
            .collect()
    }

    pub(crate) fn projection_options(&self) -> ProjectionOptions {
        ProjectionOptions::with_delta(self.projection_delta)
    }
}

/// One row of a convergence trace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iteration: usize,
    pub elapsed_seconds: f64,
    pub dual_objective: f64,
    pub duality_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    MaxIterations,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub x: Vec<f64>,
    pub final_gap: f64,
    pub trace: Vec<TraceRow>,
    pub iterations_run: usize,
    pub status: SolveStatus,
    pub state: DualState,
}

impl SolveReport {
    pub fn converged(&self) -> bool {
        self.status == SolveStatus::Converged
    }
}

/// Per-atom dual pairs plus the running aggregate `sum_r y_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualState {
    /// `y[r]` is indexed by position in `atoms[r].members()`.
    pub y: Vec<Vec<f64>>,
    pub phi: Vec<f64>,
    pub y_sum: Vec<f64>,
}

impl DualState {
    /// The apex `y = 0, phi = 0`.
    pub fn zeros(instance: &ProblemInstance) -> Self {
        Self {
            y: instance.atoms().iter().map(|a| vec![0.0; a.len()]).collect(),
            phi: vec![0.0; instance.num_atoms()],
            y_sum: vec![0.0; instance.n()],
        }
    }

    pub fn summed(instance: &ProblemInstance, y: &[Vec<f64>]) -> Vec<f64> {
        let mut sum = vec![0.0; instance.n()];
        for (atom, yr) in instance.atoms().iter().zip(y) {
            for (&v, &val) in atom.members().iter().zip(yr) {
                sum[v] += val;
            }
        }
        sum
    }

    pub fn refresh_sum(&mut self, instance: &ProblemInstance) {
        self.y_sum = Self::summed(instance, &self.y);
    }
}

/// `g(y, phi)`.
pub fn dual_objective(instance: &ProblemInstance, state: &DualState) -> f64 {
    let w = instance.w();
    let fit: f64 = state
        .y_sum
        .iter()
        .zip(instance.a())
        .zip(w)
        .map(|((s, a), wi)| {
            let d = s - 2.0 * wi * a;
            d * d / wi
        })
        .sum();
    fit + state.phi.iter().map(|p| p * p).sum::<f64>()
}

/// `x = a - 1/2 W^-1 sum_r y_r`.
pub fn primal_from_dual(instance: &ProblemInstance, state: &DualState) -> Vec<f64> {
    instance
        .a()
        .iter()
        .zip(&state.y_sum)
        .zip(instance.w())
        .map(|((a, s), w)| a - 0.5 * s / w)
        .collect()
}

/// `P(x) - (||a||_W^2 - g / 4)` at the recovered primal point.
///
/// Values slightly below zero are clamped; the slack is relative to the
/// magnitude of the terms so badly scaled instances do not trip on round-off.
pub fn duality_gap(instance: &ProblemInstance, state: &DualState) -> Result<f64> {
    let x = primal_from_dual(instance, state);
    gap_at(instance, state, &x)
}

fn gap_at(instance: &ProblemInstance, state: &DualState, x: &[f64]) -> Result<f64> {
    let primal = instance.primal_objective(x);
    let a_sq = wnorm_sq(instance.a(), instance.w());
    let quarter_g = dual_objective(instance, state) / 4.0;
    let gap = primal - (a_sq - quarter_g);
    if gap >= 0.0 {
        return Ok(gap);
    }
    // the lower bound is a difference of two terms that may nearly cancel
    let slack = 1e-12 * primal.abs().max(a_sq).max(quarter_g).max(1.0);
    if gap >= -slack {
        Ok(0.0)
    } else {
        Err(Error::NegativeGap { gap })
    }
}

/// Shared trace bookkeeping for both solvers.
pub(crate) struct Tracer {
    start: Instant,
    pub rows: Vec<TraceRow>,
    tolerance: f64,
}

impl Tracer {
    pub fn new(tolerance: f64) -> Self {
        Self {
            start: Instant::now(),
            rows: Vec::new(),
            tolerance,
        }
    }

    /// Records a row and reports whether the gap meets the tolerance.
    pub fn record(&mut self, instance: &ProblemInstance, state: &DualState, iteration: usize) -> Result<bool> {
        let gap = duality_gap(instance, state)?;
        self.rows.push(TraceRow {
            iteration,
            elapsed_seconds: self.start.elapsed().as_secs_f64(),
            dual_objective: dual_objective(instance, state),
            duality_gap: gap,
        });
        Ok(gap <= self.tolerance)
    }

    pub fn finish(self, instance: &ProblemInstance, state: DualState, iterations_run: usize, converged: bool) -> SolveReport {
        let x = primal_from_dual(instance, &state);
        let final_gap = self.rows.last().map(|r| r.duality_gap).unwrap_or(f64::INFINITY);
        SolveReport {
            x,
            final_gap,
            trace: self.rows,
            iterations_run,
            status: if converged {
                SolveStatus::Converged
            } else {
                SolveStatus::MaxIterations
            },
            state,
        }
    }
}

/// Dispatches on [`Method`].
pub fn solve(instance: &ProblemInstance, method: Method, config: &SolverConfig) -> Result<SolveReport> {
    match method {
        Method::Rcd => rcd_solve(instance, config),
        Method::Ap => ap_solve(instance, config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::submodular::SubmodularAtom;
    use approx::assert_relative_eq;

    fn edge_instance() -> ProblemInstance {
        ProblemInstance::new(
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![SubmodularAtom::graph_edge(1.0, 0, 1).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn apex_objective_is_four_a_w_a() {
        let inst = ProblemInstance::new(
            vec![1.0, -2.0],
            vec![2.0, 0.5],
            vec![SubmodularAtom::graph_edge(1.0, 0, 1).unwrap()],
        )
        .unwrap();
        let s = DualState::zeros(&inst);
        assert_relative_eq!(dual_objective(&inst, &s), 4.0 * (2.0 + 2.0));
        assert_eq!(primal_from_dual(&inst, &s), vec![1.0, -2.0]);
    }

    #[test]
    fn closed_form_optimum_has_zero_gap() {
        let inst = edge_instance();
        // x* = (2/3, 1/3), y = 2 W (a - x*), phi = 2 f(x*)
        let s = DualState {
            y: vec![vec![2.0 / 3.0, -2.0 / 3.0]],
            phi: vec![2.0 / 3.0],
            y_sum: vec![2.0 / 3.0, -2.0 / 3.0],
        };
        // hand expansion: (2/3 - 2)^2 + (2/3)^2 + (2/3)^2
        assert_relative_eq!(dual_objective(&inst, &s), 8.0 / 3.0, epsilon = 1e-15);
        let x = primal_from_dual(&inst, &s);
        assert_relative_eq!(x[0], 2.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(x[1], 1.0 / 3.0, epsilon = 1e-15);
        assert!(duality_gap(&inst, &s).unwrap() <= 1e-14);
    }

    #[test]
    fn apex_gap_vanishes_for_constant_target() {
        let inst = ProblemInstance::new(
            vec![0.3; 3],
            vec![1.0; 3],
            vec![SubmodularAtom::undirected(2.0, vec![0, 1, 2]).unwrap()],
        )
        .unwrap();
        assert_eq!(duality_gap(&inst, &DualState::zeros(&inst)).unwrap(), 0.0);
    }

    #[test]
    fn infeasible_state_is_reported() {
        let inst = edge_instance();
        // optimal y with phi dropped to 0: outside the cone, gap -1/9
        let s = DualState {
            y: vec![vec![2.0 / 3.0, -2.0 / 3.0]],
            phi: vec![0.0],
            y_sum: vec![2.0 / 3.0, -2.0 / 3.0],
        };
        assert!(matches!(duality_gap(&inst, &s), Err(Error::NegativeGap { .. })));
    }

    #[test]
    fn exact_backend_rejected_for_cardinality() {
        let inst = ProblemInstance::new(
            vec![0.0; 3],
            vec![1.0; 3],
            vec![SubmodularAtom::cardinality(1.0, vec![0, 1, 2]).unwrap()],
        )
        .unwrap();
        let cfg = SolverConfig {
            backend: Some(Backend::Exact),
            ..SolverConfig::default()
        };
        assert!(matches!(rcd_solve(&inst, &cfg), Err(Error::Config(_))));
        assert!(matches!(ap_solve(&inst, &cfg), Err(Error::Config(_))));
    }

    #[test]
    fn config_validation() {
        let inst = edge_instance();
        let bad = SolverConfig {
            trace_every: Some(0),
            ..SolverConfig::default()
        };
        assert!(bad.validate(&inst).is_err());
        let bad = SolverConfig {
            gap_tolerance: 0.0,
            ..SolverConfig::default()
        };
        assert!(bad.validate(&inst).is_err());
        assert_eq!("ap".parse::<Method>().unwrap(), Method::Ap);
        assert!("dr".parse::<Method>().is_err());
    }
}
