// SPDX-License-Identifier: Apache-2.0

//! Alternating projections between the cone product and the affine
//! coupling set, in the compact form that keeps only `y` and `phi`.

use super::{DualState, SolveReport, SolverConfig, Tracer};
use crate::error::Result;
use crate::par;
use crate::projection::project;
use crate::submodular::{DegreeVariant, ProblemInstance};

/// Alternating projections. One iteration projects every atom once; the
/// projections are independent and are merged in atom order, so the result
/// does not depend on thread scheduling.
pub fn ap_solve(instance: &ProblemInstance, config: &SolverConfig) -> Result<SolveReport> {
    config.validate(instance)?;
    let backends = config.backends(instance);
    let opts = config.projection_options();
    let psi = instance.degree_vector(DegreeVariant::IncidenceCount)?;
    let (a, w) = (instance.a(), instance.w());
    let every = config.trace_every.unwrap_or(1);
    let mut state = DualState::zeros(instance);
    let mut tracer = Tracer::new(config.gap_tolerance);

    let mut converged = tracer.record(instance, &state, 0)?;
    let mut k = 0;
    while !converged && k < config.max_iterations {
        // shift_v = 1/2 (Psi^-1 W alpha)_v with alpha = 2 W^-1 y_sum - 4 a
        let shift: Vec<f64> = (0..instance.n())
            .map(|v| 0.5 * w[v] * (2.0 * state.y_sum[v] / w[v] - 4.0 * a[v]) / psi[v])
            .collect();
        let results = par::map_indexed(instance.num_atoms(), config.parallel, |r| {
            let atom = &instance.atoms()[r];
            let target: Vec<f64> = atom
                .members()
                .iter()
                .zip(&state.y[r])
                .map(|(&v, &y)| y - shift[v])
                .collect();
            let metric: Vec<f64> = atom.members().iter().map(|&v| psi[v] / w[v]).collect();
            project(atom, &target, &metric, backends[r], &opts)
        });
        for (r, res) in results.into_iter().enumerate() {
            let res = res?;
            state.y[r] = res.y;
            state.phi[r] = res.phi;
        }
        state.refresh_sum(instance);
        k += 1;
        if k % every == 0 || k == config.max_iterations {
            converged = tracer.record(instance, &state, k)?;
        }
    }
    Ok(tracer.finish(instance, state, k, converged))
}
