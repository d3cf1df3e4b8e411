// SPDX-License-Identifier: Apache-2.0

//! Projection onto the cone `C = {(y, phi) : phi >= 0, y in phi * B}`:
//!
//! ```text
//! min_{(y, phi) in C}  h(y, phi) = ||y - a||_W~^2 + phi^2
//! ```
//!
//! All vectors here are local to the atom (indexed by position in
//! `members`), and `w_tilde` is the diagonal of the metric.

mod directed;
mod fw;
mod mnp;

use serde::{Deserialize, Serialize};

pub use directed::exact_directed;
pub use fw::conic_fw;
pub use mnp::{active_set_qp, conic_mnp, ActiveSet};

use crate::error::{Error, Result};
use crate::submodular::SubmodularAtom;
use crate::vector::{wdist_sq, wdot};

/// Default termination tolerance for standalone projections.
pub const DEFAULT_DELTA: f64 = 1e-10;
/// Termination tolerance when a projection serves as a reference.
pub const ORACLE_DELTA: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectionStatus {
    Converged,
    MaxIterations,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    pub y: Vec<f64>,
    pub phi: f64,
    /// `||y - a||_W~^2 + phi^2`.
    pub h_value: f64,
    pub status: ProjectionStatus,
    pub major_loops: usize,
    pub minor_loops: usize,
    /// Objective after every iteration (index 0 is the starting point);
    /// only filled when [`ProjectionOptions::record_history`] is set.
    pub history: Vec<f64>,
}

impl ProjectionResult {
    pub(crate) fn finish(
        a: &[f64],
        w_tilde: &[f64],
        y: Vec<f64>,
        phi: f64,
        status: ProjectionStatus,
        major_loops: usize,
        minor_loops: usize,
        history: Vec<f64>,
    ) -> Self {
        let h_value = h_value(&y, phi, a, w_tilde);
        Self {
            y,
            phi,
            h_value,
            status,
            major_loops,
            minor_loops,
            history,
        }
    }
}

/// `||y - a||_W~^2 + phi^2`.
pub fn h_value(y: &[f64], phi: f64, a: &[f64], w_tilde: &[f64]) -> f64 {
    wdist_sq(y, a, w_tilde) + phi * phi
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionOptions {
    /// Stop once `<y - a, q>_W~ + phi >= -delta` for the greedy minimizer `q`.
    pub delta: f64,
    /// Iteration cap; `None` uses `100 |S_r|` MAJOR loops for MNP and
    /// `100 |S_r|^2` iterations for FW.
    pub max_iterations: Option<usize>,
    pub record_history: bool,
}

impl Default for ProjectionOptions {
    fn default() -> Self {
        Self {
            delta: DEFAULT_DELTA,
            max_iterations: None,
            record_history: false,
        }
    }
}

impl ProjectionOptions {
    pub fn with_delta(delta: f64) -> Self {
        Self {
            delta,
            ..Self::default()
        }
    }
}

/// Which routine computes the conic projections inside the dual solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    /// Sorted line search for graph edges and (directed) hyperedges.
    Exact,
    /// Conic min-norm-point.
    Mnp,
    /// Conic Frank-Wolfe.
    Fw,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Mnp => "mnp",
            Backend::Fw => "fw",
        }
    }

    /// Exact for cut kinds, MNP otherwise.
    pub fn default_for(atom: &SubmodularAtom) -> Self {
        if atom.is_cut() {
            Backend::Exact
        } else {
            Backend::Mnp
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "mnp" => Ok(Backend::Mnp),
            "fw" => Ok(Backend::Fw),
            other => Err(Error::Config(format!("unknown backend '{other}'"))),
        }
    }
}

/// Projects with the requested backend.
pub fn project(
    atom: &SubmodularAtom,
    a: &[f64],
    w_tilde: &[f64],
    backend: Backend,
    opts: &ProjectionOptions,
) -> Result<ProjectionResult> {
    match backend {
        Backend::Exact => exact_directed(atom, a, w_tilde),
        Backend::Mnp => Ok(conic_mnp(atom, a, w_tilde, opts)),
        Backend::Fw => Ok(conic_fw(atom, a, w_tilde, opts)),
    }
}

/// KKT residual of a candidate projection:
///
/// ```text
/// max(0, -min_{q in B} [<y - a, q>_W~ + phi]) + |<y - a, y>_W~ + phi^2|
/// ```
///
/// The first term is the violated stationarity along extreme rays; the
/// second is the perpendicularity of the residual to the iterate. Both
/// vanish exactly at the optimum.
pub fn check_kkt(atom: &SubmodularAtom, a: &[f64], w_tilde: &[f64], y: &[f64], phi: f64) -> f64 {
    let residual: Vec<f64> = y.iter().zip(a).map(|(yi, ai)| yi - ai).collect();
    // min_q <y - a, q>_W~ = -max_q <W~(a - y), q> = -f(W~(a - y))
    let dir: Vec<f64> = residual
        .iter()
        .zip(w_tilde)
        .map(|(r, w)| -r * w)
        .collect();
    let stationarity = (atom.lovasz_local(&dir) - phi).max(0.0);
    let perpendicular = (wdot(&residual, y, w_tilde) + phi * phi).abs();
    stationarity + perpendicular
}
