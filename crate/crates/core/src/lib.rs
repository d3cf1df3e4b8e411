// SPDX-License-Identifier: Apache-2.0

//! Quadratic decomposable submodular function minimization (QDSFM).
//!
//! Solves
//!
//! ```text
//! min_x  ||x - a||_W^2 + sum_r [f_r(x)]^2
//! ```
//!
//! where each `f_r` is the Lovász extension of a structured submodular
//! function. The solvers work on a dual formulation over a product of cones
//! `C_r = {(y, phi) : phi >= 0, y in phi * B_r}`:
//!
//! * [`solver::rcd_solve`] performs random coordinate descent, one conic
//!   projection per step;
//! * [`solver::ap_solve`] performs alternating projections, all `R` conic
//!   projections per step (data-parallel with the `parallel` feature).
//!
//! The conic projections come from [`projection`]: a conic min-norm-point
//! method, a conic Frank-Wolfe method and an exact `O(k log k)` routine for
//! (directed) hyperedges. [`apps`] builds hypergraph PageRank, sweep cuts and
//! semi-supervised learning on top, and [`oracles`] holds slow brute-force
//! reference computations used by the test suites.

pub mod apps;
pub mod error;
pub mod io;
pub mod oracles;
pub mod par;
pub mod projection;
pub mod solver;
pub mod submodular;
pub mod vector;

pub use error::{Error, Result};
pub use projection::{Backend, ProjectionResult, ProjectionStatus};
pub use solver::{ap_solve, rcd_solve, DualState, Method, SolveReport, SolverConfig};
pub use submodular::{AtomKind, DegreeVariant, ProblemInstance, SubmodularAtom};
