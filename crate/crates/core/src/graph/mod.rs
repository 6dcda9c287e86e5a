//! Parametric digraphs, their instantiations, and the classical shortest-path
//! engines everything else is built from.

mod bellman_ford;
mod dijkstra;
mod format;
mod hop;

use std::sync::OnceLock;

use num::{Signed, Zero};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::poly::{Ext, Poly, Rational};

pub use bellman_ford::{
    bellman_ford, bellman_ford_virtual_source, bellman_ford_walk_distances, NegativeCycle,
};
pub use dijkstra::{dijkstra, dijkstra_by};
pub use format::{parse_pwg, write_pwg, FormatError};
pub use hop::{
    expand as expand_factors, hop_limited_apsp, hop_limited_apsp_by, HopLimitedApsp, MinPlusFactor,
};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {edge} has negative weight {weight}")]
    NegativeEdge { edge: EdgeId, weight: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: Poly,
}

/// Directed multigraph whose edges carry polynomials in `x`.
///
/// Edge ids are positions in insertion order. Parallel edges and self-loops
/// are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ParametricGraph {
    n: usize,
    edges: Vec<Edge>,
    hash: Memo<String>,
}

impl ParametricGraph {
    pub fn new(n: usize) -> Self {
        ParametricGraph {
            n,
            edges: Vec::new(),
            hash: Memo::default(),
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Poly)>,
    ) -> Result<Self, GraphError> {
        let mut g = ParametricGraph::new(n);
        for (src, dst, weight) in edges {
            g.add_edge(src, dst, weight)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, src: VertexId, dst: VertexId, weight: Poly) -> Result<EdgeId, GraphError> {
        for vertex in [src, dst] {
            if vertex >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex, n: self.n });
            }
        }
        self.edges.push(Edge { src, dst, weight });
        self.hash = Memo::default();
        Ok(self.edges.len() - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Largest edge-polynomial degree (0 for an edgeless graph).
    pub fn degree_bound(&self) -> usize {
        self.edges.iter().map(|e| e.weight.degree()).max().unwrap_or(0)
    }

    pub fn is_linear(&self) -> bool {
        self.degree_bound() <= 1
    }

    /// `G(r)`: every edge weight evaluated at `r`.
    pub fn instantiate(&self, r: &Rational) -> InstantiatedGraph {
        InstantiatedGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| WeightedEdge {
                    src: e.src,
                    dst: e.dst,
                    weight: e.weight.evaluate(r),
                })
                .collect(),
        }
    }

    /// Same topology, each edge weighted by its slope (negated when `negate`).
    pub fn slope_graph(&self, negate: bool) -> InstantiatedGraph {
        InstantiatedGraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| {
                    let s = e.weight.slope();
                    WeightedEdge {
                        src: e.src,
                        dst: e.dst,
                        weight: if negate { -s } else { s },
                    }
                })
                .collect(),
        }
    }

    /// Sum of the edge polynomials along `path`.
    pub fn path_weight(&self, path: &[EdgeId]) -> Poly {
        path.iter().map(|&e| self.edges[e].weight.clone()).sum()
    }

    /// Vertex sequence of an edge path starting at `start`.
    pub fn path_vertices(&self, start: VertexId, path: &[EdgeId]) -> Vec<VertexId> {
        let mut out = vec![start];
        out.extend(path.iter().map(|&e| self.edges[e].dst));
        out
    }

    /// Hex SHA-256 of the canonical `.pwg` text; used to tie advice to its graph.
    pub fn content_hash(&self) -> String {
        self.hash
            .get_or_init(|| hex::encode(Sha256::digest(write_pwg(self).as_bytes())))
            .clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: Rational,
}

/// A concrete weighted digraph; edge `i` corresponds to edge `i` of the
/// parametric graph it was instantiated from.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct InstantiatedGraph {
    pub n: usize,
    pub edges: Vec<WeightedEdge>,
}

impl InstantiatedGraph {
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Rational)>,
    ) -> Result<Self, GraphError> {
        let mut out = Vec::new();
        for (src, dst, weight) in edges {
            for vertex in [src, dst] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            out.push(WeightedEdge { src, dst, weight });
        }
        Ok(InstantiatedGraph { n, edges: out })
    }

    pub fn first_negative_edge(&self) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.weight.is_negative())
    }

    pub fn path_length(&self, path: &[EdgeId]) -> Rational {
        path.iter()
            .fold(Rational::zero(), |acc, &e| acc + &self.edges[e].weight)
    }
}

/// Distances and a parent tree from one source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestPathResult {
    pub source: VertexId,
    pub dist: Vec<Ext>,
    pub parent: Vec<Option<EdgeId>>,
}

impl ShortestPathResult {
    /// Edge ids from the source to `v` following the parent tree, or `None`
    /// when `v` is unreachable.
    pub fn path_to(&self, v: VertexId, edges: &[impl EdgeEnds]) -> Option<Vec<EdgeId>> {
        if !self.dist[v].is_finite() {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = v;
        while cur != self.source {
            let e = self.parent[cur]?;
            path.push(e);
            cur = edges[e].src();
            if path.len() > edges.len() {
                return None;
            }
        }
        path.reverse();
        Some(path)
    }
}

/// Anything with a source vertex; lets [`ShortestPathResult::path_to`] walk
/// either kind of edge list.
pub trait EdgeEnds {
    fn src(&self) -> VertexId;
    fn dst(&self) -> VertexId;
}

impl EdgeEnds for Edge {
    fn src(&self) -> VertexId {
        self.src
    }
    fn dst(&self) -> VertexId {
        self.dst
    }
}

impl EdgeEnds for WeightedEdge {
    fn src(&self) -> VertexId {
        self.src
    }
    fn dst(&self) -> VertexId {
        self.dst
    }
}

/// A lazily filled cache that takes no part in equality or debug output.
#[derive(Clone)]
pub(crate) struct Memo<T>(OnceLock<T>);

impl<T> Default for Memo<T> {
    fn default() -> Self {
        Memo(OnceLock::new())
    }
}

impl<T> Memo<T> {
    pub(crate) fn get_or_init(&self, f: impl FnOnce() -> T) -> &T {
        self.0.get_or_init(f)
    }
}

impl<T> PartialEq for Memo<T> {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl<T> Eq for Memo<T> {}

impl<T> std::fmt::Debug for Memo<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("..")
    }
}

/// Compressed adjacency: for each vertex, `(edge id, other endpoint)` pairs.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<usize>,
    entries: Vec<(EdgeId, VertexId)>,
}

impl Adjacency {
    /// Out-edges when `reverse` is false, in-edges (keyed by destination) otherwise.
    pub fn build(n: usize, ends: impl Iterator<Item = (VertexId, VertexId)> + Clone, reverse: bool) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for (s, d) in ends.clone() {
            offsets[if reverse { d } else { s } + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut entries = vec![(0, 0); offsets[n]];
        for (id, (s, d)) in ends.enumerate() {
            let (key, other) = if reverse { (d, s) } else { (s, d) };
            entries[fill[key]] = (id, other);
            fill[key] += 1;
        }
        Adjacency { offsets, entries }
    }

    pub fn of(&self, v: VertexId) -> &[(EdgeId, VertexId)] {
        &self.entries[self.offsets[v]..self.offsets[v + 1]]
    }
}
