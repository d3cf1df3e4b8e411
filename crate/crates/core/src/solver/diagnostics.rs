// SPDX-License-Identifier: Apache-2.0

//! Geometric constants behind the linear convergence rates.

use crate::error::Result;
use crate::submodular::{DegreeVariant, ProblemInstance};

/// How `rho^2 = max_{y_r in B_r} sum_r ||y_r||_1^2` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoMode {
    /// Per-atom maximum `l1` norm over the base polytope.
    Exact,
    /// `4 sum_i D_ii` with `D` from [`DegreeVariant::MaxSquared`].
    DegreeBound,
}

pub fn rho_squared(instance: &ProblemInstance, mode: RhoMode) -> Result<f64> {
    match mode {
        RhoMode::Exact => Ok(instance
            .atoms()
            .iter()
            .map(|a| {
                let m = a.max_l1_norm();
                m * m
            })
            .sum()),
        RhoMode::DegreeBound => {
            let d = instance.degree_vector(DegreeVariant::MaxSquared)?;
            Ok(4.0 * d.iter().sum::<f64>())
        }
    }
}

/// `mu(W1, W2) = max{ sum W1 * sum 1/W2, 9/4 rho^2 sum W1 + 1 }`.
pub fn mu_estimate(instance: &ProblemInstance, w1: &[f64], w2: &[f64], mode: RhoMode) -> Result<f64> {
    let s1: f64 = w1.iter().sum();
    let s2: f64 = w2.iter().map(|v| 1.0 / v).sum();
    let rho2 = rho_squared(instance, mode)?;
    Ok((s1 * s2).max(2.25 * rho2 * s1 + 1.0))
}
