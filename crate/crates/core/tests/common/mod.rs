// SPDX-License-Identifier: Apache-2.0

//! Random inputs shared by the integration suites.

#![allow(dead_code)]

use qdsfm::apps::{Hyperedge, Hypergraph};
use qdsfm::{ProblemInstance, SubmodularAtom};
use rand::seq::{index::sample, SliceRandom};
use rand::Rng;
use rand_distr::StandardNormal;

pub fn normal_vec<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn uniform_vec<R: Rng>(rng: &mut R, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

/// Nonempty head and tail drawn independently from `members`.
pub fn random_directed<R: Rng>(rng: &mut R, weight: f64, members: Vec<usize>) -> SubmodularAtom {
    let k = members.len();
    let pick = |rng: &mut R| {
        let size = rng.gen_range(1..=k);
        let mut s: Vec<usize> = sample(rng, k, size).into_iter().map(|i| members[i]).collect();
        s.sort_unstable();
        s
    };
    let head = pick(rng);
    let tail = pick(rng);
    SubmodularAtom::directed(weight, members, head, tail).unwrap()
}

/// Any atom kind on `members` (length at least 2).
pub fn random_atom<R: Rng>(rng: &mut R, members: Vec<usize>) -> SubmodularAtom {
    let w = rng.gen_range(0.2..3.0);
    match rng.gen_range(0..4) {
        0 if members.len() == 2 => SubmodularAtom::graph_edge(w, members[0], members[1]).unwrap(),
        0 | 1 => SubmodularAtom::undirected(w, members).unwrap(),
        2 => random_directed(rng, w, members),
        _ => SubmodularAtom::cardinality(rng.gen_range(0.1..=1.0), members).unwrap(),
    }
}

/// Atom on local vertices `0..k`.
pub fn random_local_atom<R: Rng>(rng: &mut R, k: usize) -> SubmodularAtom {
    random_atom(rng, (0..k).collect())
}

/// Instance with `n` vertices and `r` atoms, every vertex covered.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize, r: usize) -> ProblemInstance {
    loop {
        let mut atoms = Vec::with_capacity(r);
        for _ in 0..r {
            let k = rng.gen_range(2..=n);
            let mut members = sample(rng, n, k).into_vec();
            members.sort_unstable();
            atoms.push(random_atom(rng, members));
        }
        let a: Vec<f64> = normal_vec(rng, n);
        let w = uniform_vec(rng, n, 0.2, 3.0);
        if let Ok(inst) = ProblemInstance::new(a, w, atoms) {
            return inst;
        }
    }
}

/// Connected random graph: a random spanning tree plus extra edges.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> Hypergraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let j = order[rng.gen_range(0..i)];
        edges.push(Hyperedge::undirected(rng.gen_range(0.5..2.0), vec![order[i], j]).unwrap());
    }
    for _ in 0..extra {
        let pair = sample(rng, n, 2).into_vec();
        edges.push(Hyperedge::undirected(rng.gen_range(0.5..2.0), pair).unwrap());
    }
    Hypergraph::new(n, edges).unwrap()
}
