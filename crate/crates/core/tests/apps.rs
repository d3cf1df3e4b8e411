// SPDX-License-Identifier: Apache-2.0

mod common;

use qdsfm::apps::{
    cheeger_classify, classification_error, cut_labels, ls_curve, pagerank, planted_clusters, ssl_multiclass,
    ssl_solve, sweep_cut, CheegerDenominator, ClusterParams, Hyperedge, Hypergraph,
};
use qdsfm::oracles::{brute_min_conductance, dense_graph_pagerank};
use qdsfm::vector::max_abs_diff;
use qdsfm::{Method, SolverConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tight() -> SolverConfig {
    SolverConfig {
        gap_tolerance: 1e-14,
        max_iterations: 5_000_000,
        ..SolverConfig::default()
    }
}

fn loose() -> SolverConfig {
    SolverConfig {
        gap_tolerance: 1e-10,
        max_iterations: 1_000_000,
        ..SolverConfig::default()
    }
}

fn small_planted() -> ClusterParams {
    ClusterParams {
        n: 60,
        intra_per_cluster: 40,
        cross: 8,
        edge_size: 4,
        labeled_per_cluster: 3,
    }
}

#[test]
fn pagerank_is_a_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let hg = common::random_graph(&mut rng, 20, 15);
        let mut p0 = vec![0.0; 20];
        p0[rng.gen_range(0..20)] = 1.0;
        let p = pagerank(&hg, 0.15, &p0, &tight()).unwrap().p;
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!(p.iter().all(|&v| v >= -1e-12));
    }
}

#[test]
fn pagerank_matches_dense_on_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let hg = common::random_graph(&mut rng, 30, 40);
    let p0: Vec<f64> = (0..30).map(|i| if i < 3 { 1.0 / 3.0 } else { 0.0 }).collect();
    let p = pagerank(&hg, 0.3, &p0, &tight()).unwrap().p;
    let dense = dense_graph_pagerank(&hg, 0.3, &p0).unwrap();
    assert!(max_abs_diff(&p, &dense) < 1e-7);
}

#[test]
fn sweep_cut_never_beats_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let n = rng.gen_range(4..=12);
        let mut edges = Vec::new();
        for _ in 0..n + 4 {
            let k = rng.gen_range(2..=4.min(n));
            let mut m = rand::seq::index::sample(&mut rng, n, k).into_vec();
            m.sort_unstable();
            edges.push(Hyperedge::undirected(rng.gen_range(0.5..2.0), m).unwrap());
        }
        let Ok(hg) = Hypergraph::new(n, edges) else { continue };
        let mut p0 = vec![0.0; n];
        p0[0] = 1.0;
        let p = pagerank(&hg, 0.2, &p0, &loose()).unwrap().p;
        let sweep = sweep_cut(&hg, &p).unwrap();
        let (_, best) = brute_min_conductance(&hg).unwrap();
        assert!(sweep.best_conductance >= best - 1e-12);
        let direct = hg.conductance(&sweep.best_set).unwrap();
        assert!((direct - sweep.best_conductance).abs() < 1e-12);
    }
}

#[test]
fn planted_sweep_finds_a_cluster() {
    let data = planted_clusters(&small_planted(), 5).unwrap();
    let hg = &data.hypergraph;
    let mut p0 = vec![0.0; hg.n()];
    p0[0] = 1.0;
    let p = pagerank(hg, 0.05, &p0, &loose()).unwrap().p;
    let sweep = sweep_cut(hg, &p).unwrap();
    let planted: Vec<usize> = (0..hg.n() / 2).collect();
    assert!(sweep.best_conductance <= hg.conductance(&planted).unwrap() + 1e-12);
}

#[test]
fn ls_curve_is_concave_and_capped() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let hg = common::random_graph(&mut rng, 25, 30);
    let mut p0 = vec![0.0; 25];
    p0[7] = 1.0;
    let p = pagerank(&hg, 0.1, &p0, &tight()).unwrap().p;
    let curve = ls_curve(&hg, &p).unwrap();
    let vol = hg.total_volume();
    let grid: Vec<f64> = (0..=200).map(|i| vol * i as f64 / 200.0).collect();
    let vals: Vec<f64> = grid.iter().map(|&z| curve.eval(z)).collect();
    assert!(vals[0].abs() < 1e-12);
    assert!((vals[200] - 1.0).abs() < 1e-9);
    for t in vals.windows(3) {
        assert!(t[1] >= (t[0] + t[2]) / 2.0 - 1e-12);
    }
    for pair in vals.windows(2) {
        assert!(pair[1] >= pair[0] - 1e-12);
    }
}

#[test]
fn ssl_recovers_small_planted_clusters() {
    let data = planted_clusters(&small_planted(), 11).unwrap();
    let hg = &data.hypergraph;
    let w_norm = hg.incidence_counts();
    let config = SolverConfig {
        gap_tolerance: 1e-9,
        max_iterations: 5_000_000,
        ..SolverConfig::default()
    };
    for method in [Method::Rcd, Method::Ap] {
        let res = ssl_solve(hg, &data.labels, 0.02, &w_norm, method, &config).unwrap();
        assert!(res.report.converged());
        let cut = cheeger_classify(hg, &res.scores, &w_norm, CheegerDenominator::Min).unwrap();
        assert!(classification_error(&cut_labels(hg.n(), &cut), &data.truth) <= 0.1);
    }
}

#[test]
fn multiclass_matches_two_class_split() {
    let data = planted_clusters(&small_planted(), 12).unwrap();
    let hg = &data.hypergraph;
    let w_norm = hg.incidence_counts();
    let labels: Vec<Option<usize>> = data
        .labels
        .iter()
        .map(|&l| match l {
            -1 => Some(0),
            1 => Some(1),
            _ => None,
        })
        .collect();
    let config = SolverConfig {
        gap_tolerance: 1e-10,
        ..SolverConfig::default()
    };
    let (pred, scores) = ssl_multiclass(hg, &labels, 2, 0.5, &w_norm, Method::Rcd, &config).unwrap();
    assert_eq!(scores.len(), 2);
    let truth: Vec<usize> = data.truth.iter().map(|&t| usize::from(t == 1)).collect();
    assert!(classification_error(&pred, &truth) <= 0.1);
}
