//! JSON input formats for graphs and link data.
//!
//! Graph files may name vertices by arbitrary positive labels; they are
//! renumbered `1..=m` in increasing order, so generator signs are unaffected.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hypergraph::{SimpleGraph, ThreeGraph};
use crate::linkinv::{LinkData, LinkingMatrix};
use crate::ring::AntisymPoly;

/// Increasing bijection between file labels and `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<usize>,
}

impl LabelMap {
    pub fn identity(m: usize) -> Self {
        LabelMap { labels: (1..=m).collect() }
    }

    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let set: BTreeSet<usize> = labels.iter().copied().collect();
        if set.len() != labels.len() {
            return Err(Error::Parse("duplicate vertex label".into()));
        }
        if set.contains(&0) {
            return Err(Error::Parse("vertex labels must be positive".into()));
        }
        Ok(LabelMap { labels: set.into_iter().collect() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, &l)| l == i + 1)
    }

    /// Internal index of a file label.
    pub fn index(&self, label: usize) -> Result<usize> {
        self.labels
            .binary_search(&label)
            .map(|i| i + 1)
            .map_err(|_| Error::Parse(format!("unknown vertex {label}")))
    }

    /// File label of an internal index.
    pub fn label(&self, index: usize) -> usize {
        self.labels[index - 1]
    }

    /// Renames a polynomial's vertices back to file labels.
    pub fn to_labels(&self, p: &AntisymPoly) -> AntisymPoly {
        p.map_vertices(|v| self.label(v))
    }
}

#[derive(Debug, Clone)]
pub enum GraphInput {
    Three { graph: ThreeGraph, labels: LabelMap },
    Simple { graph: SimpleGraph, labels: LabelMap },
}

#[derive(Deserialize)]
struct RawGraph {
    #[serde(rename = "type")]
    kind: String,
    vertices: Value,
    edges: Vec<Vec<usize>>,
}

fn parse_vertices(v: &Value) -> Result<LabelMap> {
    match v {
        Value::Number(n) => {
            let m = n
                .as_u64()
                .filter(|&m| m >= 1)
                .ok_or_else(|| Error::Parse(format!("bad vertex count {n}")))?;
            Ok(LabelMap::identity(m as usize))
        }
        Value::Array(items) => {
            let labels = items
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|l| l as usize)
                        .ok_or_else(|| Error::Parse(format!("bad vertex label {x}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if labels.is_empty() {
                return Err(Error::Parse("empty vertex list".into()));
            }
            LabelMap::new(labels)
        }
        _ => Err(Error::Parse("`vertices` must be a count or a list of labels".into())),
    }
}

fn map_edge<const K: usize>(edge: &[usize], labels: &LabelMap) -> Result<[usize; K]> {
    if edge.len() != K {
        return Err(Error::Parse(format!("edge {edge:?} needs {K} vertices")));
    }
    let mut out = [0; K];
    for (o, &l) in out.iter_mut().zip(edge) {
        *o = labels.index(l)?;
    }
    let set: BTreeSet<usize> = out.iter().copied().collect();
    if set.len() != K {
        return Err(Error::Parse(format!("edge {edge:?} repeats a vertex")));
    }
    Ok(out)
}

pub fn parse_graph_json(s: &str) -> Result<GraphInput> {
    let raw: RawGraph = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let labels = parse_vertices(&raw.vertices)?;
    match raw.kind.as_str() {
        "3-graph" => {
            let edges = raw
                .edges
                .iter()
                .map(|e| map_edge::<3>(e, &labels))
                .collect::<Result<Vec<_>>>()?;
            let graph = ThreeGraph::new(labels.len(), edges)?;
            Ok(GraphInput::Three { graph, labels })
        }
        "graph" => {
            let edges = raw
                .edges
                .iter()
                .map(|e| map_edge::<2>(e, &labels))
                .collect::<Result<Vec<_>>>()?;
            let graph = SimpleGraph::new(labels.len(), edges)?;
            Ok(GraphInput::Simple { graph, labels })
        }
        other => Err(Error::Parse(format!("unknown graph type `{other}`"))),
    }
}

#[derive(Debug, Clone)]
pub enum LinkInput {
    Linking(LinkingMatrix),
    Triple(LinkData),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    components: usize,
    #[serde(default)]
    linking: Option<Vec<RawEntry>>,
    #[serde(default)]
    triple_linking: Option<Vec<RawEntry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    indices: Vec<usize>,
    value: i64,
}

fn check_entries(entries: &[RawEntry], k: usize) -> Result<()> {
    let mut seen = BTreeSet::new();
    for e in entries {
        if e.indices.len() != k {
            return Err(Error::Parse(format!("{:?} needs {k} indices", e.indices)));
        }
        let set: BTreeSet<usize> = e.indices.iter().copied().collect();
        if set.len() != k {
            return Err(Error::Parse(format!("{:?} repeats an index", e.indices)));
        }
        if !seen.insert(set) {
            return Err(Error::Parse(format!("duplicate entry for {:?}", e.indices)));
        }
    }
    Ok(())
}

pub fn parse_link_json(s: &str) -> Result<LinkInput> {
    let raw: RawLink = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let m = raw.components;
    if m == 0 {
        return Err(Error::Parse("`components` must be positive".into()));
    }
    let wrap = |e: Error| match e {
        Error::IndexOutOfRange { index, size } => {
            Error::Parse(format!("index {index} outside 1..={size}"))
        }
        other => other,
    };
    match (raw.linking, raw.triple_linking) {
        (Some(entries), None) => {
            check_entries(&entries, 2)?;
            let mut lk = LinkingMatrix::new(m);
            for e in entries {
                lk.set(e.indices[0], e.indices[1], BigInt::from(e.value)).map_err(wrap)?;
            }
            Ok(LinkInput::Linking(lk))
        }
        (None, Some(entries)) => {
            check_entries(&entries, 3)?;
            let mut d = LinkData::new(m);
            for e in entries {
                let [i, j, k] = [e.indices[0], e.indices[1], e.indices[2]];
                d.set(i, j, k, BigInt::from(e.value)).map_err(wrap)?;
            }
            Ok(LinkInput::Triple(d))
        }
        _ => Err(Error::Parse(
            "give exactly one of `linking` or `triple_linking`".into(),
        )),
    }
}

/// Edge list of a 3-graph in file labels, for reports.
pub fn labelled_edges(g: &ThreeGraph, labels: &LabelMap) -> Vec<[usize; 3]> {
    g.edges().iter().map(|e| e.map(|v| labels.label(v))).collect()
}
