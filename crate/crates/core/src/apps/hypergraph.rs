// SPDX-License-Identifier: Apache-2.0

//! Weighted (directed) hypergraphs, cut volumes and conductance.

use crate::error::{Error, Result};
use crate::submodular::SubmodularAtom;

/// A hyperedge with weight `w`. Undirected edges use `head = tail = members`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    weight: f64,
    members: Vec<usize>,
    directed: Option<(Vec<usize>, Vec<usize>)>,
}

impl Hyperedge {
    pub fn undirected(weight: f64, members: Vec<usize>) -> Result<Self> {
        let e = Self {
            weight,
            members,
            directed: None,
        };
        e.to_atom()?;
        Ok(e)
    }

    pub fn directed(weight: f64, members: Vec<usize>, head: Vec<usize>, tail: Vec<usize>) -> Result<Self> {
        let e = Self {
            weight,
            members,
            directed: Some((head, tail)),
        };
        e.to_atom()?;
        Ok(e)
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_directed(&self) -> bool {
        self.directed.is_some()
    }

    pub fn head(&self) -> &[usize] {
        self.directed.as_ref().map_or(&self.members, |(h, _)| h)
    }

    pub fn tail(&self) -> &[usize] {
        self.directed.as_ref().map_or(&self.members, |(_, t)| t)
    }

    /// Atom with `F(S) = sqrt(w)` on cut sets, so `f(x)^2 = w (..)^2`.
    pub fn to_atom(&self) -> Result<SubmodularAtom> {
        match &self.directed {
            Some((h, t)) => SubmodularAtom::directed(self.weight, self.members.clone(), h.clone(), t.clone()),
            None if self.members.len() == 2 => {
                SubmodularAtom::graph_edge(self.weight, self.members[0], self.members[1])
            }
            None => SubmodularAtom::undirected(self.weight, self.members.clone()),
        }
    }
}

/// Volumes of a vertex set, its complement and its boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutStats {
    pub volume: f64,
    pub complement_volume: f64,
    pub boundary_volume: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Hyperedge>,
    degrees: Vec<f64>,
    /// `(edge, in head, in tail)` per vertex.
    incidence: Vec<Vec<(usize, bool, bool)>>,
}

impl Hypergraph {
    /// Validates vertex ranges and requires every degree to be positive.
    pub fn new(n: usize, edges: Vec<Hyperedge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("hypergraph has no vertices".to_string()));
        }
        let mut degrees = vec![0.0; n];
        let mut incidence = vec![Vec::new(); n];
        for (r, e) in edges.iter().enumerate() {
            for &v in e.members() {
                if v >= n {
                    return Err(Error::InvalidInstance(format!(
                        "hyperedge {r} references vertex {v} outside [0, {n})"
                    )));
                }
                degrees[v] += e.weight;
                incidence[v].push((r, e.head().contains(&v), e.tail().contains(&v)));
            }
        }
        if let Some(i) = degrees.iter().position(|&d| d <= 0.0) {
            return Err(Error::InvalidInstance(format!("vertex {i} has zero degree")));
        }
        Ok(Self {
            n,
            edges,
            degrees,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// `d_i = sum_{r : i in S_r} w_r`.
    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// `vol(V) = sum_i d_i`.
    pub fn total_volume(&self) -> f64 {
        self.degrees.iter().sum()
    }

    /// `|{r : i in S_r}|`.
    pub fn incidence_counts(&self) -> Vec<f64> {
        self.incidence.iter().map(|inc| inc.len() as f64).collect()
    }

    /// `(edge, in head, in tail)` for every edge containing `v`.
    pub fn incident(&self, v: usize) -> &[(usize, bool, bool)] {
        &self.incidence[v]
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.members().len() == 2)
    }

    pub fn to_atoms(&self) -> Result<Vec<SubmodularAtom>> {
        self.edges.iter().map(Hyperedge::to_atom).collect()
    }

    pub fn mask(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in set {
            if v >= self.n {
                return Err(Error::Domain(format!("vertex {v} outside [0, {})", self.n)));
            }
            mask[v] = true;
        }
        Ok(mask)
    }

    /// Whether edge `r` lies in the boundary of the set given by `mask`:
    /// some head inside and some tail outside.
    pub fn crosses(&self, r: usize, mask: &[bool]) -> bool {
        let e = &self.edges[r];
        e.head().iter().any(|&v| mask[v]) && e.tail().iter().any(|&v| !mask[v])
    }

    pub fn cut_stats_mask(&self, mask: &[bool]) -> CutStats {
        let volume: f64 = (0..self.n).filter(|&i| mask[i]).map(|i| self.degrees[i]).sum();
        let boundary_volume = (0..self.edges.len())
            .filter(|&r| self.crosses(r, mask))
            .map(|r| self.edges[r].weight)
            .sum();
        CutStats {
            volume,
            complement_volume: self.total_volume() - volume,
            boundary_volume,
        }
    }

    pub fn cut_stats(&self, set: &[usize]) -> Result<CutStats> {
        Ok(self.cut_stats_mask(&self.mask(set)?))
    }

    /// `vol(boundary S) / min(vol(S), vol(complement))` for a proper,
    /// nonempty `S`.
    pub fn conductance(&self, set: &[usize]) -> Result<f64> {
        let mask = self.mask(set)?;
        let size = mask.iter().filter(|&&b| b).count();
        if size == 0 || size == self.n {
            return Err(Error::Domain(
                "conductance needs a nonempty proper subset".to_string(),
            ));
        }
        Ok(self.conductance_mask(&mask))
    }

    pub(crate) fn conductance_mask(&self, mask: &[bool]) -> f64 {
        let s = self.cut_stats_mask(mask);
        s.boundary_volume / s.volume.min(s.complement_volume)
    }
}
