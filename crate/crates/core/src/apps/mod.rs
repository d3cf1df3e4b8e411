// SPDX-License-Identifier: Apache-2.0

//! Hypergraph applications built on the QDSFM solvers.

pub mod hypergraph;
pub mod pagerank;
pub mod ssl;
pub mod synthetic;

pub use hypergraph::{CutStats, Hyperedge, Hypergraph};
pub use pagerank::{ls_curve, pagerank, pagerank_instance, sweep_cut, LsCurve, PageRankResult, SweepResult};
pub use ssl::{
    cheeger_classify, classification_error, cut_labels, ssl_instance, ssl_multiclass, ssl_solve, CheegerCut,
    CheegerDenominator, SslResult,
};
pub use synthetic::{cardinality_bench, observe_labels, planted_clusters, CardinalityParams, ClusterParams, PlantedClusters};
