//! 3-graphs, ordinary graphs, spanning trees, contraction and deletion.
//!
//! Vertices are always `1..=m`. Edges are identified by their position in the
//! edge list, so parallel edges are distinct. Each 3-graph edge also carries a
//! *generator label*: the vertex triple naming its variable `y`. It defaults to
//! the edge's own vertices; contraction keeps the labels of the parent edges
//! so that polynomials of a quotient graph are written in the parent's
//! variables.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::orient::cycle_product;

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// A 3-uniform hypergraph on vertices `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeGraph {
    m: usize,
    edges: Vec<[usize; 3]>,
    labels: Option<Vec<[usize; 3]>>,
}

/// Result of contracting an edge.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub graph: ThreeGraph,
    /// `relabel[v - 1]` is the new label of old vertex `v`; the contracted
    /// edge's vertices all map to `1`.
    pub relabel: Vec<usize>,
    /// Index in the parent graph of every surviving edge.
    pub origin: Vec<usize>,
}

impl ThreeGraph {
    pub fn new(m: usize, edges: Vec<[usize; 3]>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("a 3-graph needs at least one vertex".into()));
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for e in edges {
            let mut t = e;
            t.sort_unstable();
            if t[0] == 0 || t[2] > m {
                return Err(Error::InvalidGraph(format!("edge {e:?} outside 1..={m}")));
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(Error::InvalidGraph(format!("degenerate edge {e:?}")));
            }
            sorted.push(t);
        }
        Ok(ThreeGraph {
            m,
            edges: sorted,
            labels: None,
        })
    }

    /// The complete 3-graph Γ_m: one edge per 3-subset, in lexicographic order.
    pub fn complete(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("m must be at least 1".into()));
        }
        let mut edges = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                for k in j + 1..=m {
                    edges.push([i, j, k]);
                }
            }
        }
        Ok(ThreeGraph {
            m,
            edges,
            labels: None,
        })
    }

    /// Replaces the generator labels. `labels[i]` is aligned position by
    /// position with `edges()[i]`.
    pub fn with_generator_labels(mut self, labels: Vec<[usize; 3]>) -> Result<Self> {
        if labels.len() != self.edges.len() {
            return Err(Error::InvalidGraph(format!(
                "{} generator labels for {} edges",
                labels.len(),
                self.edges.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge vertex triples, each sorted ascending.
    pub fn edges(&self) -> &[[usize; 3]] {
        &self.edges
    }

    pub fn generator_labels(&self, edge: usize) -> [usize; 3] {
        match &self.labels {
            Some(l) => l[edge],
            None => self.edges[edge],
        }
    }

    pub fn has_custom_labels(&self) -> bool {
        self.labels.is_some()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.edges.len() {
            return Err(Error::EdgeIndex {
                index,
                len: self.edges.len(),
            });
        }
        Ok(())
    }

    /// The sub-3-graph on all vertices with the given edges.
    pub fn spanning_subgraph(&self, edge_indices: &[usize]) -> Result<Self> {
        for &i in edge_indices {
            self.check_index(i)?;
        }
        Ok(ThreeGraph {
            m: self.m,
            edges: edge_indices.iter().map(|&i| self.edges[i]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| edge_indices.iter().map(|&i| l[i]).collect()),
        })
    }

    /// Connectivity of the bipartite vertex/edge incidence graph.
    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.m);
        for e in &self.edges {
            uf.union(e[0] - 1, e[1] - 1);
            uf.union(e[0] - 1, e[2] - 1);
        }
        let root = uf.find(0);
        (1..self.m).all(|v| uf.find(v) == root)
    }

    /// Connected with no cycles in the incidence graph.
    pub fn is_tree(&self) -> bool {
        let mut uf = UnionFind::new(self.m);
        let mut acyclic = true;
        for e in &self.edges {
            let (a, b, c) = (uf.find(e[0] - 1), uf.find(e[1] - 1), uf.find(e[2] - 1));
            if a == b || b == c || a == c {
                acyclic = false;
                break;
            }
            uf.union(a, b);
            uf.union(a, c);
        }
        let tree = acyclic && self.is_connected();
        debug_assert!(
            !(self.m % 2 == 1 && 2 * self.edges.len() + 1 == self.m)
                || tree == self.cycle_product_is_full(),
            "tree test disagrees with the 3-cycle product criterion"
        );
        tree
    }

    fn cycle_product_is_full(&self) -> bool {
        cycle_product(&self.edges, self.m)
            .map(|p| p.is_full_cycle())
            .unwrap_or(false)
    }

    /// All spanning trees as ascending edge-index lists, in lexicographic order.
    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        if self.m.is_multiple_of(2) {
            return Vec::new();
        }
        let need = (self.m - 1) / 2;
        if need == 0 {
            return vec![Vec::new()];
        }
        let n = self.edges.len();
        (0..n)
            .into_par_iter()
            .map(|first| {
                let mut out = Vec::new();
                let mut uf = UnionFind::new(self.m);
                if self.try_join(&mut uf, first) {
                    let mut chosen = vec![first];
                    self.extend_trees(&uf, first + 1, need, &mut chosen, &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }

    fn try_join(&self, uf: &mut UnionFind, edge: usize) -> bool {
        let e = self.edges[edge];
        let (a, b, c) = (uf.find(e[0] - 1), uf.find(e[1] - 1), uf.find(e[2] - 1));
        if a == b || b == c || a == c {
            return false;
        }
        uf.union(a, b);
        uf.union(a, c);
        true
    }

    fn extend_trees(
        &self,
        uf: &UnionFind,
        next: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == need {
            // `need` edges each merging three components leave one component.
            out.push(chosen.clone());
            return;
        }
        let remaining = need - chosen.len();
        for i in next..self.edges.len() {
            if self.edges.len() - i < remaining {
                break;
            }
            let mut branch = uf.clone();
            if self.try_join(&mut branch, i) {
                chosen.push(i);
                self.extend_trees(&branch, i + 1, need, chosen, out);
                chosen.pop();
            }
        }
    }

    /// Merges the three vertices of edge `index` into vertex `1`, shifting the
    /// remaining vertices down in order, and discards edges that become
    /// degenerate (including the contracted edge).
    pub fn contract(&self, index: usize) -> Result<Contraction> {
        self.check_index(index)?;
        let merged = self.edges[index];
        let mut relabel = vec![0; self.m];
        let mut next = 2;
        for v in 1..=self.m {
            if merged.contains(&v) {
                relabel[v - 1] = 1;
            } else {
                relabel[v - 1] = next;
                next += 1;
            }
        }
        let mut edges = Vec::new();
        let mut labels = Vec::new();
        let mut origin = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.iter().filter(|v| merged.contains(v)).count() >= 2 {
                continue;
            }
            let lab = self.generator_labels(i);
            let mut pairs: Vec<(usize, usize)> =
                (0..3).map(|k| (relabel[e[k] - 1], lab[k])).collect();
            pairs.sort_unstable();
            edges.push([pairs[0].0, pairs[1].0, pairs[2].0]);
            labels.push([pairs[0].1, pairs[1].1, pairs[2].1]);
            origin.push(i);
        }
        let graph = ThreeGraph {
            m: self.m - 2,
            edges,
            labels: Some(labels),
        };
        Ok(Contraction {
            graph,
            relabel,
            origin,
        })
    }

    /// Removes edge `index`; vertices are kept.
    pub fn delete(&self, index: usize) -> Result<Self> {
        self.check_index(index)?;
        let keep: Vec<usize> = (0..self.edges.len()).filter(|&i| i != index).collect();
        self.spanning_subgraph(&keep)
    }
}

/// An ordinary multigraph on vertices `1..=m` (no loops).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    m: usize,
    edges: Vec<[usize; 2]>,
}

impl SimpleGraph {
    pub fn new(m: usize, edges: Vec<[usize; 2]>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for e in edges {
            let mut t = e;
            t.sort_unstable();
            if t[0] == 0 || t[1] > m {
                return Err(Error::InvalidGraph(format!("edge {e:?} outside 1..={m}")));
            }
            if t[0] == t[1] {
                return Err(Error::InvalidGraph(format!("loop edge {e:?}")));
            }
            sorted.push(t);
        }
        Ok(SimpleGraph { m, edges: sorted })
    }

    pub fn complete(m: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                edges.push([i, j]);
            }
        }
        Self::new(m, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.m);
        for e in &self.edges {
            uf.union(e[0] - 1, e[1] - 1);
        }
        let root = uf.find(0);
        (1..self.m).all(|v| uf.find(v) == root)
    }

    /// Connected with exactly `m - 1` edges.
    pub fn is_tree(&self) -> bool {
        let tree = self.edges.len() + 1 == self.m && self.is_connected();
        debug_assert!(
            self.edges.len() + 1 != self.m || tree == self.transposition_product_is_full(),
            "graph tree test disagrees with the transposition product criterion"
        );
        tree
    }

    fn transposition_product_is_full(&self) -> bool {
        let mut acc = crate::orient::Permutation::identity(self.m);
        for e in &self.edges {
            let t = crate::orient::Permutation::cycle(self.m, e).expect("valid edge");
            acc = acc.compose(&t).expect("same size");
        }
        acc.is_full_cycle()
    }

    /// All spanning trees as ascending `(m - 1)`-subsets of edge indices.
    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        let need = self.m - 1;
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.extend_trees(&UnionFind::new(self.m), 0, need, &mut chosen, &mut out);
        out
    }

    fn extend_trees(
        &self,
        uf: &UnionFind,
        next: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == need {
            out.push(chosen.clone());
            return;
        }
        let remaining = need - chosen.len();
        for i in next..self.edges.len() {
            if self.edges.len() - i < remaining {
                break;
            }
            let mut branch = uf.clone();
            let e = self.edges[i];
            if branch.union(e[0] - 1, e[1] - 1) {
                chosen.push(i);
                self.extend_trees(&branch, i + 1, need, chosen, out);
                chosen.pop();
            }
        }
    }
}

/// Whether an ordinary graph is a tree.
pub fn graph_is_tree(g: &SimpleGraph) -> bool {
    g.is_tree()
}

/// Spanning trees of an ordinary graph.
pub fn graph_spanning_trees(g: &SimpleGraph) -> Vec<Vec<usize>> {
    g.spanning_trees()
}
