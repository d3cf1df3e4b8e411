// SPDX-License-Identifier: Apache-2.0

//! Random coordinate descent on the dual cone product.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DualState, SolveReport, SolverConfig, Tracer};
use crate::error::Result;
use crate::projection::{h_value, project, Backend, ProjectionOptions};
use crate::submodular::ProblemInstance;

/// Incremental updates between full recomputations of `sum_r y_r`.
const REFRESH_EVERY: usize = 10_000;

/// What a single coordinate step did.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub atom: usize,
    /// Part of `g` that depends on block `atom`, before and after.
    pub local_before: f64,
    pub local_after: f64,
}

/// Drives RCD one step at a time. The RNG is ChaCha8 seeded from
/// [`SolverConfig::rng_seed`]; atoms are drawn with `gen_range`, which
/// samples by rejection and has no modulo bias.
pub struct RcdStepper<'a> {
    instance: &'a ProblemInstance,
    backends: Vec<Backend>,
    opts: ProjectionOptions,
    rng: ChaCha8Rng,
    state: DualState,
    since_refresh: usize,
}

impl<'a> RcdStepper<'a> {
    pub fn new(instance: &'a ProblemInstance, config: &SolverConfig) -> Result<Self> {
        config.validate(instance)?;
        Ok(Self {
            instance,
            backends: config.backends(instance),
            opts: config.projection_options(),
            rng: ChaCha8Rng::seed_from_u64(config.rng_seed),
            state: DualState::zeros(instance),
            since_refresh: 0,
        })
    }

    pub fn state(&self) -> &DualState {
        &self.state
    }

    pub fn into_state(self) -> DualState {
        self.state
    }

    pub fn step(&mut self) -> Result<StepOutcome> {
        let r = self.rng.gen_range(0..self.instance.num_atoms());
        self.update(r)
    }

    /// Replaces block `r` by the projection of `2 W a - sum_{r' != r} y_r'`.
    pub fn update(&mut self, r: usize) -> Result<StepOutcome> {
        let inst = self.instance;
        let atom = &inst.atoms()[r];
        let (a, w) = (inst.a(), inst.w());
        let y_r = &self.state.y[r];
        // 2 W a - sum_{r' != r} y_r', restricted to the members
        let target: Vec<f64> = atom
            .members()
            .iter()
            .zip(y_r)
            .map(|(&v, &own)| 2.0 * w[v] * a[v] - (self.state.y_sum[v] - own))
            .collect();
        let metric: Vec<f64> = atom.members().iter().map(|&v| 1.0 / w[v]).collect();
        let result = project(atom, &target, &metric, self.backends[r], &self.opts)?;
        let local_before = h_value(y_r, self.state.phi[r], &target, &metric);
        let local_after = result.h_value;
        // an inexact backend may return a point worse than the current one
        if local_after <= local_before {
            for ((&v, old), &new) in atom.members().iter().zip(self.state.y[r].iter_mut()).zip(&result.y) {
                self.state.y_sum[v] += new - *old;
                *old = new;
            }
            self.state.phi[r] = result.phi;
        }
        self.since_refresh += 1;
        if self.since_refresh >= REFRESH_EVERY {
            self.state.refresh_sum(inst);
            self.since_refresh = 0;
        }
        Ok(StepOutcome {
            atom: r,
            local_before,
            local_after: local_after.min(local_before),
        })
    }
}

/// Random coordinate descent. Stops when a trace point reports a duality
/// gap at most `config.gap_tolerance`, or after `config.max_iterations`
/// single-atom updates.
pub fn rcd_solve(instance: &ProblemInstance, config: &SolverConfig) -> Result<SolveReport> {
    let mut stepper = RcdStepper::new(instance, config)?;
    let every = config.trace_every.unwrap_or(instance.num_atoms());
    let mut tracer = Tracer::new(config.gap_tolerance);

    let mut converged = tracer.record(instance, stepper.state(), 0)?;
    let mut k = 0;
    while !converged && k < config.max_iterations {
        let out = stepper.step()?;
        debug_assert!(out.local_after <= out.local_before);
        k += 1;
        if k % every == 0 || k == config.max_iterations {
            converged = tracer.record(instance, stepper.state(), k)?;
        }
    }
    let mut state = stepper.into_state();
    state.refresh_sum(instance);
    Ok(tracer.finish(instance, state, k, converged))
}
