use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::ops::Add;

use num::Zero;

use super::{Adjacency, EdgeId, GraphError, InstantiatedGraph, ShortestPathResult, VertexId};
use crate::poly::Ext;

/// Dijkstra with a binary heap, `O(m log n)`.
///
/// Rejects graphs with any negative edge instead of returning wrong answers.
pub fn dijkstra(g: &InstantiatedGraph, source: VertexId) -> Result<ShortestPathResult, GraphError> {
    assert!(source < g.n, "source {source} out of range");
    if let Some(edge) = g.first_negative_edge() {
        return Err(GraphError::NegativeEdge {
            edge,
            weight: g.edges[edge].weight.to_string(),
        });
    }
    let adj = Adjacency::build(g.n, g.edges.iter().map(|e| (e.src, e.dst)), false);
    let weights: Vec<_> = g.edges.iter().map(|e| e.weight.clone()).collect();
    let (dist, parent) = dijkstra_by(g.n, &adj, &weights, source);
    Ok(ShortestPathResult {
        source,
        dist: dist.into_iter().map(Ext::from).collect(),
        parent,
    })
}

struct Entry<W>(W, VertexId);

impl<W: PartialOrd> PartialEq for Entry<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: PartialOrd> Eq for Entry<W> {}

impl<W: PartialOrd> PartialOrd for Entry<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: PartialOrd> Ord for Entry<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .partial_cmp(&other.0)
            .unwrap_or(Ordering::Equal)
            .then(self.1.cmp(&other.1))
    }
}

/// Generic core over any ordered additive weight (exact rationals or `f64`).
///
/// `weights[e]` must be nonnegative for every edge id listed in `adj`; the
/// caller is responsible for that. Returns `(dist, parent edge)`, `None`
/// meaning unreachable.
pub fn dijkstra_by<W>(
    n: usize,
    adj: &Adjacency,
    weights: &[W],
    source: VertexId,
) -> (Vec<Option<W>>, Vec<Option<EdgeId>>)
where
    W: Clone + PartialOrd + Zero,
    for<'a> &'a W: Add<&'a W, Output = W>,
{
    let mut dist: Vec<Option<W>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(W::zero());
    heap.push(Reverse(Entry(W::zero(), source)));
    while let Some(Reverse(Entry(d, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(e, v) in adj.of(u) {
            if done[v] {
                continue;
            }
            let cand = &d + &weights[e];
            if dist[v].as_ref().is_none_or(|dv| cand < *dv) {
                dist[v] = Some(cand.clone());
                parent[v] = Some(e);
                heap.push(Reverse(Entry(cand, v)));
            }
        }
    }
    (dist, parent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> InstantiatedGraph {
        InstantiatedGraph::from_edges(n, edges.iter().map(|&(s, d, w)| (s, d, int(w)))).unwrap()
    }

    #[test]
    fn zero_edge() {
        let r = dijkstra(&graph(2, &[(0, 1, 0)]), 0).unwrap();
        assert_eq!(r.dist, vec![Ext::zero(), Ext::zero()]);
    }

    #[test]
    fn diamond_prefers_two_hops() {
        let g = graph(3, &[(0, 1, 1), (0, 2, 4), (1, 2, 1)]);
        let r = dijkstra(&g, 0).unwrap();
        assert_eq!(r.dist[2], Ext::Finite(int(2)));
        assert_eq!(r.path_to(2, &g.edges), Some(vec![0, 2]));
    }

    #[test]
    fn unreachable_is_infinite() {
        let r = dijkstra(&graph(3, &[(0, 1, 5)]), 0).unwrap();
        assert_eq!(r.dist[2], Ext::PosInf);
        assert_eq!(r.parent[2], None);
    }

    #[test]
    fn negative_edge_rejected() {
        assert!(matches!(
            dijkstra(&graph(2, &[(0, 1, -1)]), 0),
            Err(GraphError::NegativeEdge { edge: 0, .. })
        ));
    }

    #[test]
    fn works_over_floats() {
        let adj = Adjacency::build(3, [(0, 1), (1, 2), (0, 2)].into_iter(), false);
        let (d, p) = dijkstra_by(3, &adj, &[0.5f64, 0.25, 1.0], 0);
        assert_eq!(d[2], Some(0.75));
        assert_eq!(p[2], Some(1));
    }
}
