//! Immutable undirected simple graph with positive edge weights.
//!
//! Weights are distances: a lower weight brings its endpoints closer. Vertices
//! carry an external string label and a dense internal index assigned in
//! first-appearance order.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

/// One input row: an edge between two labelled vertices with an optional
/// weight (defaults to 1).
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub weight: Option<f64>,
}

impl EdgeRecord {
    pub fn new(source: impl Into<String>, target: impl Into<String>) -> Self {
        Self {
            source: source.into(),
            target: target.into(),
            weight: None,
        }
    }

    pub fn weighted(source: impl Into<String>, target: impl Into<String>, weight: f64) -> Self {
        Self {
            source: source.into(),
            target: target.into(),
            weight: Some(weight),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

impl Edge {
    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Entry of an adjacency list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adjacent {
    pub vertex: usize,
    pub edge: usize,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Adjacent>>,
    weighted: bool,
}

impl Graph {
    /// Builds a graph from edge records. Labels get indices in order of first
    /// appearance; missing weights default to 1.
    pub fn from_edges(records: &[EdgeRecord]) -> Result<Self> {
        Self::from_parts(std::iter::empty::<&str>(), records)
    }

    /// Like [`Graph::from_edges`], but first declares `vertices` in the given
    /// order. This is how isolated vertices enter a graph.
    pub fn from_parts<I, S>(vertices: I, records: &[EdgeRecord]) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut builder = GraphBuilder::default();
        for label in vertices {
            builder.add_vertex(label.as_ref())?;
        }
        for r in records {
            builder.add_edge(r)?;
        }
        Ok(builder.finish())
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff any edge weight differs from 1.
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_owned()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// `"u-v"` label of an edge, endpoints in construction order.
    pub fn edge_label(&self, e: usize) -> String {
        let edge = &self.edges[e];
        format!("{}-{}", self.labels[edge.u], self.labels[edge.v])
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v,
                len: self.labels.len(),
            })
        }
    }

    /// Adjacent vertices of `v` in ascending neighbor index.
    pub fn neighbors(&self, v: usize) -> Result<&[Adjacent]> {
        self.check_vertex(v)?;
        Ok(&self.adjacency[v])
    }

    /// Unchecked adjacency access for hot loops.
    #[inline]
    pub(crate) fn adj(&self, v: usize) -> &[Adjacent] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Index of the edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: usize, v: usize) -> Option<usize> {
        let adj = self.adjacency.get(u)?;
        adj.binary_search_by_key(&v, |a| a.vertex)
            .ok()
            .map(|i| adj[i].edge)
    }

    /// Edge records reproducing this graph. Unweighted graphs omit weights.
    pub fn to_records(&self) -> Vec<EdgeRecord> {
        self.edges
            .iter()
            .map(|e| EdgeRecord {
                source: self.labels[e.u].clone(),
                target: self.labels[e.v].clone(),
                weight: self.weighted.then_some(e.weight),
            })
            .collect()
    }

    /// Vertices without incident edges.
    pub fn isolated_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count()).filter(|&v| self.adjacency[v].is_empty())
    }
}

/// Incremental construction, for callers that interleave vertex declarations
/// and edges (e.g. file loaders). Error record numbers count `add_edge` calls.
#[derive(Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    seen: HashSet<(usize, usize)>,
    records: usize,
}

impl GraphBuilder {
    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if label.is_empty() {
            return Err(Error::EmptyLabel {
                record: self.records,
            });
        }
        Ok(self.intern(label))
    }

    pub fn add_edge(&mut self, r: &EdgeRecord) -> Result<()> {
        let record = self.records;
        self.records += 1;
        self.push(record, r)
    }

    fn intern(&mut self, label: &str) -> usize {
        if let Some(&i) = self.index.get(label) {
            return i;
        }
        let i = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), i);
        i
    }

    fn push(&mut self, record: usize, r: &EdgeRecord) -> Result<()> {
        if r.source.is_empty() || r.target.is_empty() {
            return Err(Error::EmptyLabel { record });
        }
        if r.source == r.target {
            return Err(Error::SelfLoop {
                record,
                label: r.source.clone(),
            });
        }
        let weight = r.weight.unwrap_or(1.0);
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::NonPositiveWeight { record, weight });
        }
        let u = self.intern(&r.source);
        let v = self.intern(&r.target);
        if !self.seen.insert((u.min(v), u.max(v))) {
            return Err(Error::DuplicateEdge {
                record,
                u: r.source.clone(),
                v: r.target.clone(),
            });
        }
        self.edges.push(Edge { u, v, weight });
        Ok(())
    }

    pub fn finish(self) -> Graph {
        let n = self.labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            adjacency[e.u].push(Adjacent {
                vertex: e.v,
                edge: i,
                weight: e.weight,
            });
            adjacency[e.v].push(Adjacent {
                vertex: e.u,
                edge: i,
                weight: e.weight,
            });
        }
        for list in &mut adjacency {
            list.sort_by_key(|a| a.vertex);
        }
        let weighted = self.edges.iter().any(|e| e.weight != 1.0);
        Graph {
            labels: self.labels,
            index: self.index,
            edges: self.edges,
            adjacency,
            weighted,
        }
    }
}
