// SPDX-License-Identifier: Apache-2.0

//! Structured submodular functions, their Lovász extensions and base
//! polytope oracles, and the QDSFM problem instance.
//!
//! Every atom stores its values on its own incidence set (`members`);
//! vectors passed to the `*_local` methods are indexed by position in
//! `members`, not by vertex id.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{argsort_desc, gather, wdist_sq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AtomKind {
    /// `F(S) = sqrt(w)` when `S` separates the two endpoints.
    GraphEdge,
    /// `F(S) = sqrt(w)` when `S` splits the hyperedge nontrivially.
    UndirectedHyperedge,
    /// `F(S) = sqrt(w)` when `S` meets the head set and misses part of the
    /// tail set.
    DirectedHyperedge,
    /// `F(S) = sqrt(w) * min(|S|, |S_r \ S|)^theta / (|S_r|/2)^theta`.
    CardinalityTheta,
}

/// One term `F_r` of the decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct SubmodularAtom {
    kind: AtomKind,
    weight: f64,
    members: Vec<usize>,
    head: Vec<usize>,
    tail: Vec<usize>,
    theta: f64,
    scale: f64,
    head_mask: Vec<bool>,
    tail_mask: Vec<bool>,
    tail_count: usize,
}

impl SubmodularAtom {
    /// Builds and validates an atom. `head`/`tail` are only read for
    /// [`AtomKind::DirectedHyperedge`]; `theta` only for
    /// [`AtomKind::CardinalityTheta`].
    pub fn new(
        kind: AtomKind,
        weight: f64,
        members: Vec<usize>,
        head: Vec<usize>,
        tail: Vec<usize>,
        theta: f64,
    ) -> Result<Self> {
        if !(weight.is_finite() && weight >= 0.0) {
            return Err(Error::InvalidInstance(format!(
                "weight must be finite and nonnegative, got {weight}"
            )));
        }
        if members.len() < 2 {
            return Err(Error::InvalidInstance(format!(
                "an atom needs at least two members, got {}",
                members.len()
            )));
        }
        let mut sorted = members.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(
                "duplicate vertex in members".to_string(),
            ));
        }
        let k = members.len();
        let local_of = |v: usize| members.iter().position(|&m| m == v);

        let (head, tail) = match kind {
            AtomKind::GraphEdge => {
                if k != 2 {
                    return Err(Error::InvalidInstance(format!(
                        "graph edge must have exactly two members, got {k}"
                    )));
                }
                (members.clone(), members.clone())
            }
            AtomKind::UndirectedHyperedge | AtomKind::CardinalityTheta => {
                (members.clone(), members.clone())
            }
            AtomKind::DirectedHyperedge => {
                if head.is_empty() || tail.is_empty() {
                    return Err(Error::InvalidInstance(
                        "directed hyperedge needs nonempty head and tail".to_string(),
                    ));
                }
                for (name, set) in [("head", &head), ("tail", &tail)] {
                    let mut s = set.clone();
                    s.sort_unstable();
                    if s.windows(2).any(|w| w[0] == w[1]) {
                        return Err(Error::InvalidInstance(format!(
                            "duplicate vertex in {name}"
                        )));
                    }
                    if let Some(v) = set.iter().find(|&&v| local_of(v).is_none()) {
                        return Err(Error::InvalidInstance(format!(
                            "{name} vertex {v} is not a member"
                        )));
                    }
                }
                (head, tail)
            }
        };
        if kind == AtomKind::CardinalityTheta && !(theta > 0.0 && theta <= 1.0) {
            return Err(Error::InvalidInstance(format!(
                "theta must lie in (0, 1], got {theta}"
            )));
        }
        let mut head_mask = vec![false; k];
        let mut tail_mask = vec![false; k];
        for v in &head {
            head_mask[local_of(*v).unwrap()] = true;
        }
        for v in &tail {
            tail_mask[local_of(*v).unwrap()] = true;
        }
        let tail_count = tail.len();
        Ok(Self {
            kind,
            weight,
            scale: weight.sqrt(),
            members,
            head,
            tail,
            theta: if kind == AtomKind::CardinalityTheta { theta } else { 0.0 },
            head_mask,
            tail_mask,
            tail_count,
        })
    }

    pub fn graph_edge(weight: f64, i: usize, j: usize) -> Result<Self> {
        Self::new(AtomKind::GraphEdge, weight, vec![i, j], vec![], vec![], 0.0)
    }

    pub fn undirected(weight: f64, members: Vec<usize>) -> Result<Self> {
        Self::new(AtomKind::UndirectedHyperedge, weight, members, vec![], vec![], 0.0)
    }

    pub fn directed(
        weight: f64,
        members: Vec<usize>,
        head: Vec<usize>,
        tail: Vec<usize>,
    ) -> Result<Self> {
        Self::new(AtomKind::DirectedHyperedge, weight, members, head, tail, 0.0)
    }

    /// Cardinality-based atom with unit weight.
    pub fn cardinality(theta: f64, members: Vec<usize>) -> Result<Self> {
        Self::new(AtomKind::CardinalityTheta, 1.0, members, vec![], vec![], theta)
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn theta(&self) -> Option<f64> {
        (self.kind == AtomKind::CardinalityTheta).then_some(self.theta)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Head set as vertex ids (equals `members` for undirected kinds).
    pub fn head(&self) -> &[usize] {
        &self.head
    }

    pub fn tail(&self) -> &[usize] {
        &self.tail
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Head membership by local position.
    pub fn head_mask(&self) -> &[bool] {
        &self.head_mask
    }

    pub fn tail_mask(&self) -> &[bool] {
        &self.tail_mask
    }

    /// `sqrt(w)`: the value every cut kind takes on a cut set.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// True for the kinds the exact projection handles (all cut kinds).
    pub fn is_cut(&self) -> bool {
        self.kind != AtomKind::CardinalityTheta
    }

    pub fn local_index(&self, vertex: usize) -> Option<usize> {
        self.members.iter().position(|&m| m == vertex)
    }

    fn cardinality_value(&self, s: usize) -> f64 {
        let k = self.members.len();
        let m = s.min(k - s) as f64;
        self.scale * (m / (k as f64 / 2.0)).powf(self.theta)
    }

    /// `F(S)` with `S` given as a local membership mask.
    pub fn value_local(&self, in_set: &[bool]) -> f64 {
        debug_assert_eq!(in_set.len(), self.members.len());
        match self.kind {
            AtomKind::CardinalityTheta => {
                self.cardinality_value(in_set.iter().filter(|&&b| b).count())
            }
            _ => {
                let hits_head = in_set.iter().zip(&self.head_mask).any(|(&s, &h)| s && h);
                let misses_tail = in_set.iter().zip(&self.tail_mask).any(|(&s, &t)| !s && t);
                if hits_head && misses_tail {
                    self.scale
                } else {
                    0.0
                }
            }
        }
    }

    /// `F(S)` for a set of vertex ids; every id must be a member.
    pub fn evaluate(&self, set: &[usize]) -> Result<f64> {
        let mut mask = vec![false; self.members.len()];
        for &v in set {
            let i = self.local_index(v).ok_or_else(|| {
                Error::Domain(format!("vertex {v} is not a member of the atom"))
            })?;
            mask[i] = true;
        }
        Ok(self.value_local(&mask))
    }

    /// Values `F({i_1..i_j})` for `j = 1..k` along a local ordering.
    pub fn prefix_values(&self, order: &[usize]) -> Vec<f64> {
        let mut out = Vec::with_capacity(order.len());
        match self.kind {
            AtomKind::CardinalityTheta => {
                for j in 1..=order.len() {
                    out.push(self.cardinality_value(j));
                }
            }
            _ => {
                let mut head_hit = false;
                let mut tail_in = 0usize;
                for &i in order {
                    head_hit |= self.head_mask[i];
                    if self.tail_mask[i] {
                        tail_in += 1;
                    }
                    out.push(if head_hit && tail_in < self.tail_count {
                        self.scale
                    } else {
                        0.0
                    });
                }
            }
        }
        out
    }

    /// Lovász extension on local coordinates via the sorted telescoping sum.
    pub fn lovasz_local(&self, x: &[f64]) -> f64 {
        let k = self.members.len();
        debug_assert_eq!(x.len(), k);
        let order = argsort_desc(x);
        let prefix = self.prefix_values(&order);
        let mut f = prefix[k - 1] * x[order[k - 1]];
        for j in 0..k - 1 {
            f += prefix[j] * (x[order[j]] - x[order[j + 1]]);
        }
        f
    }

    /// Lovász extension of a dense length-`N` vector; entries outside
    /// `members` are ignored.
    pub fn lovasz(&self, x: &[f64]) -> f64 {
        self.lovasz_local(&gather(x, &self.members))
    }

    /// Greedy vertex of the base polytope maximizing `<y, direction>`,
    /// written into `out` (local coordinates). Ties in `direction` are
    /// broken by ascending local position.
    pub fn greedy_into(&self, direction: &[f64], out: &mut [f64]) {
        let order = argsort_desc(direction);
        let prefix = self.prefix_values(&order);
        let mut prev = 0.0;
        for (j, &i) in order.iter().enumerate() {
            out[i] = prefix[j] - prev;
            prev = prefix[j];
        }
    }

    /// `argmax_{y in B} <y, direction>`; minimize by negating `direction`.
    pub fn greedy_lmo(&self, direction: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.members.len()];
        self.greedy_into(direction, &mut y);
        y
    }

    /// `max_S F(S)^2`.
    pub fn max_value_sq(&self) -> f64 {
        match self.kind {
            AtomKind::CardinalityTheta => {
                let k = self.members.len();
                let v = self.cardinality_value(k / 2);
                v * v
            }
            _ => {
                if self.has_cut() {
                    self.weight
                } else {
                    0.0
                }
            }
        }
    }

    /// `max_{y in B} ||y||_1`. Cut-type base polytopes have vertices
    /// `sqrt(w) (e_h - e_t)`; cardinality-based polytopes have all vertices
    /// equal up to permutation, so any greedy vertex attains the maximum.
    pub fn max_l1_norm(&self) -> f64 {
        match self.kind {
            AtomKind::CardinalityTheta => {
                let order: Vec<usize> = (0..self.members.len()).collect();
                let y = self.greedy_lmo(&order.iter().map(|&i| -(i as f64)).collect::<Vec<_>>());
                y.iter().map(|v| v.abs()).sum()
            }
            _ => {
                if self.has_cut() {
                    2.0 * self.scale
                } else {
                    0.0
                }
            }
        }
    }

    fn has_cut(&self) -> bool {
        // some head vertex differs from some tail vertex
        self.head_mask
            .iter()
            .enumerate()
            .any(|(h, &is_h)| is_h && self.tail_mask.iter().enumerate().any(|(t, &is_t)| is_t && t != h))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeVariant {
    /// `D_ii = |{r : i in S_r}|`.
    IncidenceCount,
    /// `D_ii = sum_{r : i in S_r} max_S F_r(S)^2`.
    MaxSquared,
}

/// `min_x ||x - a||_W^2 + sum_r [f_r(x)]^2` with diagonal `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    n: usize,
    a: Vec<f64>,
    w: Vec<f64>,
    atoms: Vec<SubmodularAtom>,
}

impl ProblemInstance {
    pub fn new(a: Vec<f64>, w: Vec<f64>, atoms: Vec<SubmodularAtom>) -> Result<Self> {
        let n = a.len();
        if n == 0 {
            return Err(Error::InvalidInstance("ground set is empty".to_string()));
        }
        if w.len() != n {
            return Err(Error::InvalidInstance(format!(
                "w has length {}, expected {n}",
                w.len()
            )));
        }
        if let Some(i) = a.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidInstance(format!("a[{i}] is not finite")));
        }
        if let Some(i) = w.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidInstance(format!(
                "w[{i}] = {} must be strictly positive",
                w[i]
            )));
        }
        let mut touched = vec![false; n];
        for (r, atom) in atoms.iter().enumerate() {
            for &v in atom.members() {
                if v >= n {
                    return Err(Error::InvalidInstance(format!(
                        "atom {r} references vertex {v} outside [0, {n})"
                    )));
                }
                touched[v] = true;
            }
        }
        if let Some(i) = touched.iter().position(|t| !t) {
            return Err(Error::InvalidInstance(format!(
                "vertex {i} is not incident to any atom"
            )));
        }
        Ok(Self { n, a, w, atoms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Diagonal of `W`.
    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn atoms(&self) -> &[SubmodularAtom] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    /// `||x - a||_W^2 + sum_r [f_r(x)]^2`.
    pub fn primal_objective(&self, x: &[f64]) -> f64 {
        let fit = wdist_sq(x, &self.a, &self.w);
        let reg: f64 = self
            .atoms
            .iter()
            .map(|atom| {
                let f = atom.lovasz(x);
                f * f
            })
            .sum();
        fit + reg
    }

    pub fn degree_vector(&self, variant: DegreeVariant) -> Result<Vec<f64>> {
        let mut d = vec![0.0; self.n];
        for atom in &self.atoms {
            let inc = match variant {
                DegreeVariant::IncidenceCount => 1.0,
                DegreeVariant::MaxSquared => atom.max_value_sq(),
            };
            for &v in atom.members() {
                d[v] += inc;
            }
        }
        if let Some(i) = d.iter().position(|&v| v <= 0.0) {
            return Err(Error::InvalidInstance(format!(
                "vertex {i} has zero degree"
            )));
        }
        Ok(d)
    }
}
