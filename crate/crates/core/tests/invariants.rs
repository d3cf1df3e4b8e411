// SPDX-License-Identifier: Apache-2.0

mod common;

use proptest::prelude::*;
use qdsfm::oracles::{brute_projection, enumerate_base_vertices};
use qdsfm::projection::{check_kkt, conic_fw, conic_mnp, exact_directed, h_value, ProjectionOptions};
use qdsfm::solver::{dual_objective, duality_gap, primal_from_dual, RcdStepper};
use qdsfm::vector::{dot, wdot};
use qdsfm::{rcd_solve, SolverConfig, SubmodularAtom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn atom_case() -> impl Strategy<Value = (SubmodularAtom, Vec<f64>, Vec<f64>)> {
    (any::<u64>(), 2usize..=6).prop_map(|(seed, k)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let atom = common::random_local_atom(&mut rng, k);
        let w = common::uniform_vec(&mut rng, k, 0.1, 10.0);
        let a = common::normal_vec(&mut rng, k);
        (atom, w, a)
    })
}

fn subset_masks(k: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..(1 << k)).map(move |m| (0..k).map(|i| m >> i & 1 == 1).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn submodular_inequality_holds((atom, _w, _a) in atom_case()) {
        let k = atom.len();
        let masks: Vec<Vec<bool>> = subset_masks(k).collect();
        for s in &masks {
            for t in &masks {
                let union: Vec<bool> = s.iter().zip(t).map(|(x, y)| *x || *y).collect();
                let inter: Vec<bool> = s.iter().zip(t).map(|(x, y)| *x && *y).collect();
                let lhs = atom.value_local(s) + atom.value_local(t);
                let rhs = atom.value_local(&union) + atom.value_local(&inter);
                prop_assert!(lhs >= rhs - 1e-12);
            }
        }
        prop_assert_eq!(atom.value_local(&vec![false; k]), 0.0);
    }

    #[test]
    fn lovasz_is_max_over_vertices((atom, _w, x) in atom_case()) {
        let best = enumerate_base_vertices(&atom)
            .unwrap()
            .iter()
            .map(|q| dot(q, &x))
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assert!((atom.lovasz_local(&x) - best).abs() <= 1e-10);
    }

    #[test]
    fn lovasz_is_positively_homogeneous((atom, _w, x) in atom_case(), c in 0.01f64..100.0) {
        let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
        let lhs = atom.lovasz_local(&scaled);
        prop_assert!((lhs - c * atom.lovasz_local(&x)).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }

    #[test]
    fn projections_satisfy_kkt_and_agree((atom, w, a) in atom_case()) {
        let opts = ProjectionOptions::with_delta(1e-12);
        let mnp = conic_mnp(&atom, &a, &w, &opts);
        let brute = brute_projection(&atom, &a, &w).unwrap();
        prop_assert!(check_kkt(&atom, &a, &w, &mnp.y, mnp.phi) <= 1e-9);
        prop_assert!((mnp.h_value - brute.h_value).abs() <= 1e-7);
        prop_assert!((mnp.h_value - h_value(&mnp.y, mnp.phi, &a, &w)).abs() <= 1e-12);
        // residual is perpendicular to the projection
        let resid: Vec<f64> = mnp.y.iter().zip(&a).map(|(y, a)| y - a).collect();
        prop_assert!((wdot(&resid, &mnp.y, &w) + mnp.phi * mnp.phi).abs() <= 1e-9);
        if atom.is_cut() {
            let exact = exact_directed(&atom, &a, &w).unwrap();
            prop_assert!((exact.h_value - mnp.h_value).abs() <= 1e-8);
        }
    }

    #[test]
    fn fw_never_beats_optimum((atom, w, a) in atom_case()) {
        let star = conic_mnp(&atom, &a, &w, &ProjectionOptions::with_delta(1e-13)).h_value;
        let fw = conic_fw(&atom, &a, &w, &ProjectionOptions::default());
        prop_assert!(fw.h_value >= star - 1e-9);
        prop_assert!(fw.phi >= 0.0);
    }

    #[test]
    fn weak_duality_and_descent(seed in any::<u64>(), n in 2usize..=8, r in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = common::random_instance(&mut rng, n, r);
        let config = SolverConfig { rng_seed: seed, ..SolverConfig::default() };
        let mut stepper = RcdStepper::new(&inst, &config).unwrap();
        let mut g = dual_objective(&inst, stepper.state());
        for _ in 0..50 {
            stepper.step().unwrap();
            let next = dual_objective(&inst, stepper.state());
            prop_assert!(next <= g + 1e-12 * g.abs().max(1.0));
            g = next;
            let gap = duality_gap(&inst, stepper.state()).unwrap();
            prop_assert!(gap >= 0.0);
            let x = primal_from_dual(&inst, stepper.state());
            prop_assert!(inst.primal_objective(&x).is_finite());
        }
    }

    #[test]
    fn fixed_seed_runs_repeat(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = common::random_instance(&mut rng, 5, 3);
        let config = SolverConfig { rng_seed: seed, max_iterations: 500, ..SolverConfig::default() };
        let one = rcd_solve(&inst, &config).unwrap();
        let two = rcd_solve(&inst, &config).unwrap();
        prop_assert_eq!(one.x, two.x);
        prop_assert_eq!(one.iterations_run, two.iterations_run);
    }
}
