// SPDX-License-Identifier: Apache-2.0

//! File formats.
//!
//! * Instances and hypergraphs are JSON documents with 0-based vertex ids.
//! * Traces are CSV with header `iteration,elapsed_seconds,dual_objective,duality_gap`.
//! * Solutions and vectors are one real per line.
//!
//! Floats are written with 17 significant digits so that reading a file
//! back reproduces every value exactly.
//!
//! Instance document:
//!
//! ```json
//! {
//!   "n": 2,
//!   "a": [1.0, 0.0],
//!   "w": [1.0, 1.0],
//!   "functions": [
//!     {"kind": "graph_edge", "weight": 1.0, "members": [0, 1]},
//!     {"kind": "directed_hyperedge", "weight": 2.0, "members": [0, 1], "head": [0], "tail": [1]},
//!     {"kind": "cardinality_theta", "members": [0, 1], "theta": 0.5}
//!   ]
//! }
//! ```
//!
//! `w` may instead be `{"variant": "degree" | "incidence", "beta": b}`,
//! meaning `b` times the degree vector built from `max_S F_r(S)^2` or from
//! incidence counts.
//!
//! Hypergraph document:
//!
//! ```json
//! {"n": 3, "edges": [{"weight": 1.0, "members": [0, 1, 2]}], "labels": [1, 0, -1]}
//! ```
//!
//! where an edge with `head` and `tail` is directed and `labels` is optional.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::apps::{Hyperedge, Hypergraph};
use crate::error::{Error, Result};
use crate::solver::TraceRow;
use crate::submodular::{AtomKind, DegreeVariant, ProblemInstance, SubmodularAtom};

const TRACE_HEADER: [&str; 4] = ["iteration", "elapsed_seconds", "dual_objective", "duality_gap"];

fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightVariant {
    Degree,
    Incidence,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Explicit(Vec<f64>),
    Scaled { variant: WeightVariant, beta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub kind: AtomKind,
    #[serde(default = "unit_weight")]
    pub weight: f64,
    pub members: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
}

fn unit_weight() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub a: Vec<f64>,
    pub w: WeightSpec,
    pub functions: Vec<FunctionSpec>,
}

impl FunctionSpec {
    fn to_atom(&self) -> Result<SubmodularAtom> {
        let missing = |key: &str| Error::InvalidInstance(format!("{:?} needs '{key}'", self.kind));
        match self.kind {
            AtomKind::GraphEdge => match self.members[..] {
                [i, j] => SubmodularAtom::graph_edge(self.weight, i, j),
                _ => Err(Error::InvalidInstance("graph edge needs exactly two members".to_string())),
            },
            AtomKind::UndirectedHyperedge => SubmodularAtom::undirected(self.weight, self.members.clone()),
            AtomKind::DirectedHyperedge => SubmodularAtom::directed(
                self.weight,
                self.members.clone(),
                self.head.clone().ok_or_else(|| missing("head"))?,
                self.tail.clone().ok_or_else(|| missing("tail"))?,
            ),
            AtomKind::CardinalityTheta => {
                let theta = self.theta.ok_or_else(|| missing("theta"))?;
                SubmodularAtom::new(self.kind, self.weight, self.members.clone(), vec![], vec![], theta)
            }
        }
    }

    fn from_atom(atom: &SubmodularAtom) -> Self {
        let directed = atom.kind() == AtomKind::DirectedHyperedge;
        Self {
            kind: atom.kind(),
            weight: atom.weight(),
            members: atom.members().to_vec(),
            head: directed.then(|| atom.head().to_vec()),
            tail: directed.then(|| atom.tail().to_vec()),
            theta: atom.theta(),
        }
    }
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<ProblemInstance> {
        if self.a.len() != self.n {
            return Err(Error::parse("a", format!("has length {}, expected n = {}", self.a.len(), self.n)));
        }
        let mut atoms = Vec::with_capacity(self.functions.len());
        for (r, f) in self.functions.iter().enumerate() {
            atoms.push(f.to_atom().map_err(|e| Error::parse(format!("functions[{r}]"), e.to_string()))?);
        }
        let w = match self.w {
            WeightSpec::Explicit(w) => w,
            WeightSpec::Scaled { variant, beta } => {
                if !(beta > 0.0 && beta.is_finite()) {
                    return Err(Error::parse("w.beta", format!("must be positive, got {beta}")));
                }
                let probe = ProblemInstance::new(self.a.clone(), vec![1.0; self.n], atoms.clone())
                    .map_err(|e| Error::parse("functions", e.to_string()))?;
                let d = probe
                    .degree_vector(match variant {
                        WeightVariant::Degree => DegreeVariant::MaxSquared,
                        WeightVariant::Incidence => DegreeVariant::IncidenceCount,
                    })
                    .map_err(|e| Error::parse("w", e.to_string()))?;
                d.into_iter().map(|d| beta * d).collect()
            }
        };
        ProblemInstance::new(self.a, w, atoms).map_err(|e| Error::parse("instance", e.to_string()))
    }

    pub fn from_instance(inst: &ProblemInstance) -> Self {
        Self {
            n: inst.n(),
            a: inst.a().to_vec(),
            w: WeightSpec::Explicit(inst.w().to_vec()),
            functions: inst.atoms().iter().map(FunctionSpec::from_atom).collect(),
        }
    }
}

pub fn instance_from_str(text: &str) -> Result<ProblemInstance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::parse("instance document", e.to_string()))?;
    file.into_instance()
}

pub fn instance_to_string(inst: &ProblemInstance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes")
}

pub fn parse_instance(path: impl AsRef<Path>) -> Result<ProblemInstance> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    instance_from_str(&text).map_err(|e| with_path(path, e))
}

pub fn write_instance(inst: &ProblemInstance, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, instance_to_string(inst) + "\n")?;
    Ok(())
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { context, message } => Error::Parse {
            context: format!("{}: {context}", path.display()),
            message,
        },
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    #[serde(default = "unit_weight")]
    pub weight: f64,
    pub members: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphFile {
    pub n: usize,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<i8>>,
}

/// A hypergraph plus optional `-1 / 0 / +1` vertex labels.
pub type LabeledHypergraph = (Hypergraph, Option<Vec<i8>>);

impl HypergraphFile {
    pub fn into_hypergraph(self) -> Result<LabeledHypergraph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (r, e) in self.edges.into_iter().enumerate() {
            let edge = match (e.head, e.tail) {
                (None, None) => Hyperedge::undirected(e.weight, e.members),
                (Some(h), Some(t)) => Hyperedge::directed(e.weight, e.members, h, t),
                _ => Err(Error::InvalidInstance("give both 'head' and 'tail' or neither".to_string())),
            };
            edges.push(edge.map_err(|err| Error::parse(format!("edges[{r}]"), err.to_string()))?);
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(Error::parse("labels", format!("has length {}, expected n = {}", labels.len(), self.n)));
            }
            if let Some(i) = labels.iter().position(|l| !matches!(l, -1..=1)) {
                return Err(Error::parse(format!("labels[{i}]"), "must be -1, 0 or 1"));
            }
        }
        let hg = Hypergraph::new(self.n, edges).map_err(|e| Error::parse("hypergraph", e.to_string()))?;
        Ok((hg, self.labels))
    }

    pub fn from_hypergraph(hg: &Hypergraph, labels: Option<&[i8]>) -> Self {
        Self {
            n: hg.n(),
            edges: hg
                .edges()
                .iter()
                .map(|e| EdgeSpec {
                    weight: e.weight(),
                    members: e.members().to_vec(),
                    head: e.is_directed().then(|| e.head().to_vec()),
                    tail: e.is_directed().then(|| e.tail().to_vec()),
                })
                .collect(),
            labels: labels.map(<[i8]>::to_vec),
        }
    }
}

pub fn hypergraph_from_str(text: &str) -> Result<LabeledHypergraph> {
    let file: HypergraphFile =
        serde_json::from_str(text).map_err(|e| Error::parse("hypergraph document", e.to_string()))?;
    file.into_hypergraph()
}

pub fn hypergraph_to_string(hg: &Hypergraph, labels: Option<&[i8]>) -> String {
    serde_json::to_string(&HypergraphFile::from_hypergraph(hg, labels)).expect("hypergraph serializes")
}

pub fn parse_hypergraph(path: impl AsRef<Path>) -> Result<LabeledHypergraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    hypergraph_from_str(&text).map_err(|e| with_path(path, e))
}

pub fn write_hypergraph(hg: &Hypergraph, labels: Option<&[i8]>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, hypergraph_to_string(hg, labels) + "\n")?;
    Ok(())
}

pub fn write_trace(rows: &[TraceRow], path: impl AsRef<Path>) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Domain("refusing to write an empty trace".to_string()));
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(TRACE_HEADER)?;
    for row in rows {
        w.write_record([
            row.iteration.to_string(),
            fmt_real(row.elapsed_seconds),
            fmt_real(row.dual_objective),
            fmt_real(row.duality_gap),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace(path: impl AsRef<Path>) -> Result<Vec<TraceRow>> {
    let path = path.as_ref();
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.clone();
    if header.iter().ne(TRACE_HEADER) {
        return Err(Error::parse(path.display().to_string(), "unexpected trace header"));
    }
    let mut rows = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record?;
        let field = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| Error::parse(format!("{} row {}", path.display(), line + 1), format!("bad number '{}'", &record[i])))
        };
        rows.push(TraceRow {
            iteration: record[0]
                .parse()
                .map_err(|_| Error::parse(format!("{} row {}", path.display(), line + 1), "bad iteration"))?,
            elapsed_seconds: field(1)?,
            dual_objective: field(2)?,
            duality_gap: field(3)?,
        });
    }
    Ok(rows)
}

pub fn write_vector(x: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let mut text = String::with_capacity(x.len() * 24);
    for v in x {
        text.push_str(&fmt_real(*v));
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    fs::read_to_string(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            l.trim()
                .parse()
                .map_err(|_| Error::parse(format!("{} line {}", path.display(), i + 1), format!("bad number '{l}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EDGE_DOC: &str = r#"{"n": 2, "a": [1.0, 0.0], "w": [1.0, 1.0],
        "functions": [{"kind": "graph_edge", "weight": 1.0, "members": [0, 1]}]}"#;

    #[test]
    fn minimal_document() {
        let inst = instance_from_str(EDGE_DOC).unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.a(), &[1.0, 0.0]);
        assert_eq!(inst.atoms()[0].kind(), AtomKind::GraphEdge);
    }

    #[test]
    fn scaled_degree_weights() {
        let doc = r#"{"n": 3, "a": [1, 0, -1], "w": {"variant": "degree", "beta": 0.02},
            "functions": [{"kind": "undirected_hyperedge", "weight": 2.0, "members": [0, 1, 2]},
                          {"kind": "graph_edge", "members": [1, 2]}]}"#;
        let inst = instance_from_str(doc).unwrap();
        let expect = [0.02 * 2.0, 0.02 * 3.0, 0.02 * 3.0];
        for (w, e) in inst.w().iter().zip(expect) {
            assert!((w - e).abs() < 1e-15);
        }
        let doc = doc.replace("degree", "incidence");
        let inst = instance_from_str(&doc).unwrap();
        assert_eq!(inst.w(), &[0.02, 0.04, 0.04]);
    }

    #[test]
    fn rejections_carry_context() {
        let neg = EDGE_DOC.replace("\"weight\": 1.0", "\"weight\": -1.0");
        let err = instance_from_str(&neg).unwrap_err().to_string();
        assert!(err.contains("functions[0]"), "{err}");
        let dup = EDGE_DOC.replace("[0, 1]", "[0, 0]");
        assert!(instance_from_str(&dup).is_err());
        let range = EDGE_DOC.replace("[0, 1]", "[0, 5]");
        assert!(instance_from_str(&range).is_err());
        assert!(instance_from_str("{\"n\": 2").is_err());
        let unknown = EDGE_DOC.replace("\"n\": 2", "\"n\": 2, \"extra\": 1");
        assert!(instance_from_str(&unknown).is_err());
    }

    #[test]
    fn trace_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows = vec![TraceRow {
            iteration: 3,
            elapsed_seconds: 0.1,
            dual_objective: 1.0 / 3.0,
            duality_gap: 1e-300,
        }];
        write_trace(&rows, &path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("iteration,elapsed_seconds,dual_objective,duality_gap\n"));
        assert_eq!(read_trace(&path).unwrap(), rows);
        assert!(write_trace(&[], &path).is_err());
    }

    #[test]
    fn hypergraph_round_trip_with_labels() {
        let doc = r#"{"n": 3, "edges": [{"weight": 1.5, "members": [0, 1, 2]},
            {"members": [0, 1], "head": [0], "tail": [1]}], "labels": [1, 0, -1]}"#;
        let (hg, labels) = hypergraph_from_str(doc).unwrap();
        assert!(hg.edges()[1].is_directed());
        let text = hypergraph_to_string(&hg, labels.as_deref());
        let (hg2, labels2) = hypergraph_from_str(&text).unwrap();
        assert_eq!(hg, hg2);
        assert_eq!(labels, labels2);
    }

    fn arb_instance() -> impl Strategy<Value = ProblemInstance> {
        (2usize..7).prop_flat_map(|n| {
            let atom = (0u8..4, 0.01f64..5.0, proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n), 0.05f64..1.0)
                .prop_map(|(kind, w, members, theta)| match kind {
                    0 => SubmodularAtom::graph_edge(w, members[0], members[1]).unwrap(),
                    1 => SubmodularAtom::undirected(w, members).unwrap(),
                    2 => {
                        let head = vec![members[0]];
                        let tail = members[1..].to_vec();
                        SubmodularAtom::directed(w, members, head, tail).unwrap()
                    }
                    _ => SubmodularAtom::cardinality(theta, members).unwrap(),
                });
            (
                proptest::collection::vec(-1e6f64..1e6, n),
                proptest::collection::vec(1e-3f64..1e3, n),
                proptest::collection::vec(atom, 1..5),
            )
                .prop_filter_map("every vertex covered", move |(a, w, mut atoms)| {
                    atoms.push(SubmodularAtom::undirected(1.0, (0..n).collect()).unwrap());
                    ProblemInstance::new(a, w, atoms).ok()
                })
        })
    }

    proptest! {
        #[test]
        fn instance_round_trip(inst in arb_instance()) {
            let back = instance_from_str(&instance_to_string(&inst)).unwrap();
            prop_assert_eq!(back, inst);
        }

        #[test]
        fn vector_round_trip(x in proptest::collection::vec(proptest::num::f64::NORMAL, 1..20)) {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("x.txt");
            write_vector(&x, &path).unwrap();
            prop_assert_eq!(read_vector(&path).unwrap(), x);
        }
    }
}
