// SPDX-License-Identifier: Apache-2.0

//! Seeded synthetic workloads: a planted two-cluster hypergraph and a
//! random cardinality-based QDSFM benchmark.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::hypergraph::{Hyperedge, Hypergraph};
use crate::error::{Error, Result};
use crate::submodular::{ProblemInstance, SubmodularAtom};

/// Regenerate at most this many times when some vertex stays uncovered.
const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterParams {
    pub n: usize,
    pub intra_per_cluster: usize,
    pub cross: usize,
    pub edge_size: usize,
    pub labeled_per_cluster: usize,
}

impl Default for ClusterParams {
    fn default() -> Self {
        Self {
            n: 1000,
            intra_per_cluster: 500,
            cross: 1000,
            edge_size: 20,
            labeled_per_cluster: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedClusters {
    pub hypergraph: Hypergraph,
    /// `-1` for vertices `0..n/2`, `+1` for the rest.
    pub truth: Vec<i8>,
    /// Observed labels: the truth on sampled vertices, 0 elsewhere.
    pub labels: Vec<i8>,
}

/// Two equal clusters with unit-weight hyperedges of fixed size.
/// Intra-cluster edges sample uniformly inside a cluster; cross edges
/// sample uniformly from all vertices and are redrawn until they touch
/// both clusters.
pub fn planted_clusters(params: &ClusterParams, seed: u64) -> Result<PlantedClusters> {
    let half = params.n / 2;
    if params.n < 2 || params.n % 2 != 0 {
        return Err(Error::Config(format!("n = {} must be even and at least 2", params.n)));
    }
    if params.edge_size < 2 || params.edge_size > half {
        return Err(Error::Config(format!(
            "hyperedge size {} must lie in [2, {half}]",
            params.edge_size
        )));
    }
    if params.labeled_per_cluster == 0 || params.labeled_per_cluster > half {
        return Err(Error::Config(format!(
            "labeled vertices per cluster {} must lie in [1, {half}]",
            params.labeled_per_cluster
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let truth: Vec<i8> = (0..params.n).map(|i| if i < half { -1 } else { 1 }).collect();

    for _ in 0..MAX_ATTEMPTS {
        let mut edges = Vec::with_capacity(2 * params.intra_per_cluster + params.cross);
        for offset in [0, half] {
            for _ in 0..params.intra_per_cluster {
                let mut members: Vec<usize> = sample(&mut rng, half, params.edge_size)
                    .into_iter()
                    .map(|v| v + offset)
                    .collect();
                members.sort_unstable();
                edges.push(Hyperedge::undirected(1.0, members)?);
            }
        }
        for _ in 0..params.cross {
            let members = loop {
                let mut m = sample(&mut rng, params.n, params.edge_size).into_vec();
                m.sort_unstable();
                if m[0] < half && m[m.len() - 1] >= half {
                    break m;
                }
            };
            edges.push(Hyperedge::undirected(1.0, members)?);
        }
        let Ok(hypergraph) = Hypergraph::new(params.n, edges) else {
            continue;
        };
        let mut labels = vec![0; params.n];
        for offset in [0, half] {
            for v in sample(&mut rng, half, params.labeled_per_cluster) {
                labels[v + offset] = truth[v + offset];
            }
        }
        return Ok(PlantedClusters {
            hypergraph,
            truth,
            labels,
        });
    }
    Err(Error::Config("could not cover every vertex; add more hyperedges".to_string()))
}

/// Reveals `per_class` uniformly chosen vertices of each class in `truth`
/// (`-1` or `+1`); every other entry is 0.
pub fn observe_labels(truth: &[i8], per_class: usize, seed: u64) -> Result<Vec<i8>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = vec![0; truth.len()];
    for class in [-1i8, 1] {
        let members: Vec<usize> = (0..truth.len()).filter(|&i| truth[i] == class).collect();
        if per_class == 0 || per_class > members.len() {
            return Err(Error::Config(format!(
                "cannot reveal {per_class} labels of class {class}, which has {} vertices",
                members.len()
            )));
        }
        for i in sample(&mut rng, members.len(), per_class) {
            labels[members[i]] = class;
        }
    }
    Ok(labels)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CardinalityParams {
    pub n: usize,
    pub r: usize,
    pub set_size: usize,
    pub theta: f64,
}

impl Default for CardinalityParams {
    fn default() -> Self {
        Self {
            n: 100,
            r: 100,
            set_size: 10,
            theta: 1.0,
        }
    }
}

/// `R` cardinality atoms on uniform random sets, `a ~ N(0, I)`, `W = I`.
pub fn cardinality_bench(params: &CardinalityParams, seed: u64) -> Result<ProblemInstance> {
    if params.set_size < 2 || params.set_size > params.n {
        return Err(Error::Config(format!(
            "set size {} must lie in [2, {}]",
            params.set_size, params.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut atoms = Vec::with_capacity(params.r);
        for _ in 0..params.r {
            let mut members = sample(&mut rng, params.n, params.set_size).into_vec();
            members.sort_unstable();
            atoms.push(SubmodularAtom::cardinality(params.theta, members)?);
        }
        let a: Vec<f64> = (0..params.n).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(inst) = ProblemInstance::new(a, vec![1.0; params.n], atoms) {
            return Ok(inst);
        }
    }
    Err(Error::Config("could not cover every vertex; add more atoms".to_string()))
}
