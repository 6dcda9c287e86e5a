use num::Zero;

use super::{EdgeId, InstantiatedGraph, ShortestPathResult, VertexId, WeightedEdge};
use crate::poly::{Ext, Rational};

/// A negative-weight cycle, as edge ids in traversal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeCycle(pub Vec<EdgeId>);

/// Single-source Bellman-Ford.
///
/// Returns exact distances, or one negative cycle reachable from `source`.
/// The cycle is recovered from the parent pointers once the `n`-th round
/// still improves something.
pub fn bellman_ford(
    g: &InstantiatedGraph,
    source: VertexId,
) -> Result<ShortestPathResult, NegativeCycle> {
    assert!(source < g.n, "source {source} out of range");
    let mut dist: Vec<Option<Rational>> = vec![None; g.n];
    dist[source] = Some(Rational::zero());
    let mut parent = vec![None; g.n];
    relax_to_fixpoint(&g.edges, g.n, &mut dist, &mut parent)?;
    Ok(ShortestPathResult {
        source,
        dist: dist.into_iter().map(Ext::from).collect(),
        parent,
    })
}

/// Johnson-style potentials: distances from a virtual source joined to every
/// vertex by a zero-weight edge. Every potential is `<= 0` and every edge
/// satisfies `w(u,v) + h(u) - h(v) >= 0`.
pub fn bellman_ford_virtual_source(g: &InstantiatedGraph) -> Result<Vec<Rational>, NegativeCycle> {
    let mut dist: Vec<Option<Rational>> = vec![Some(Rational::zero()); g.n];
    let mut parent = vec![None; g.n];
    relax_to_fixpoint(&g.edges, g.n, &mut dist, &mut parent)?;
    Ok(dist.into_iter().map(|d| d.unwrap_or_default()).collect())
}

/// Walk distances from `source`: `-inf` for every vertex reachable through a
/// negative cycle, `+inf` for unreachable ones, exact values otherwise.
pub fn bellman_ford_walk_distances(g: &InstantiatedGraph, source: VertexId) -> Vec<Ext> {
    assert!(source < g.n, "source {source} out of range");
    let mut dist: Vec<Option<Rational>> = vec![None; g.n];
    dist[source] = Some(Rational::zero());
    let mut scratch = vec![None; g.n];
    for _ in 1..g.n {
        if relax_round_last(&g.edges, &mut dist, &mut scratch).is_none() {
            break;
        }
    }
    // Anything still relaxable sits downstream of a negative cycle.
    let mut doomed = vec![false; g.n];
    let mut stack = Vec::new();
    for e in &g.edges {
        if let Some(du) = &dist[e.src] {
            let cand = du + &e.weight;
            if dist[e.dst].as_ref().is_none_or(|dv| cand < *dv) && !doomed[e.dst] {
                doomed[e.dst] = true;
                stack.push(e.dst);
            }
        }
    }
    let out = super::Adjacency::build(g.n, g.edges.iter().map(|e| (e.src, e.dst)), false);
    while let Some(v) = stack.pop() {
        for &(_, w) in out.of(v) {
            if !doomed[w] {
                doomed[w] = true;
                stack.push(w);
            }
        }
    }
    dist.into_iter()
        .zip(doomed)
        .map(|(d, bad)| if bad { Ext::NegInf } else { Ext::from(d) })
        .collect()
}

// One pass over every edge; returns the last vertex whose distance dropped.
fn relax_round_last(
    edges: &[WeightedEdge],
    dist: &mut [Option<Rational>],
    parent: &mut [Option<EdgeId>],
) -> Option<VertexId> {
    let mut last = None;
    for (id, e) in edges.iter().enumerate() {
        let Some(du) = &dist[e.src] else { continue };
        let cand = du + &e.weight;
        if dist[e.dst].as_ref().is_none_or(|dv| cand < *dv) {
            dist[e.dst] = Some(cand);
            parent[e.dst] = Some(id);
            last = Some(e.dst);
        }
    }
    last
}

fn relax_to_fixpoint(
    edges: &[WeightedEdge],
    n: usize,
    dist: &mut [Option<Rational>],
    parent: &mut [Option<EdgeId>],
) -> Result<(), NegativeCycle> {
    let mut round = 0;
    loop {
        round += 1;
        let Some(changed) = relax_round_last(edges, dist, parent) else {
            return Ok(());
        };
        if round >= n {
            if let Some(cycle) = cycle_through_parents(changed, parent, edges, n)
                .or_else(|| any_parent_cycle(parent, edges))
            {
                debug_assert!(cycle_len(&cycle, edges) < Rational::zero());
                return Err(NegativeCycle(cycle));
            }
            assert!(round < 4 * n + 4, "no cycle in the parent graph after {round} rounds");
        }
    }
}

fn cycle_len(cycle: &[EdgeId], edges: &[WeightedEdge]) -> Rational {
    cycle.iter().fold(Rational::zero(), |acc, &e| acc + &edges[e].weight)
}

fn cycle_through_parents(
    start: VertexId,
    parent: &[Option<EdgeId>],
    edges: &[WeightedEdge],
    n: usize,
) -> Option<Vec<EdgeId>> {
    let mut v = start;
    for _ in 0..n {
        v = edges[parent[v]?].src;
    }
    collect_cycle(v, parent, edges)
}

fn collect_cycle(
    on_cycle: VertexId,
    parent: &[Option<EdgeId>],
    edges: &[WeightedEdge],
) -> Option<Vec<EdgeId>> {
    let mut cycle = Vec::new();
    let mut x = on_cycle;
    loop {
        let e = parent[x]?;
        cycle.push(e);
        x = edges[e].src;
        if x == on_cycle {
            break;
        }
        if cycle.len() > parent.len() {
            return None;
        }
    }
    cycle.reverse();
    Some(cycle)
}

// Colour-walk over the parent forest; any back-reference closes a cycle.
fn any_parent_cycle(parent: &[Option<EdgeId>], edges: &[WeightedEdge]) -> Option<Vec<EdgeId>> {
    let n = parent.len();
    let mut mark = vec![usize::MAX; n];
    for s in 0..n {
        let mut v = s;
        while mark[v] == usize::MAX {
            mark[v] = s;
            match parent[v] {
                Some(e) => v = edges[e].src,
                None => break,
            }
        }
        if mark[v] == s && parent[v].is_some() {
            if let Some(c) = collect_cycle(v, parent, edges) {
                return Some(c);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn graph(n: usize, edges: &[(usize, usize, i64)]) -> InstantiatedGraph {
        InstantiatedGraph::from_edges(n, edges.iter().map(|&(s, d, w)| (s, d, int(w)))).unwrap()
    }

    #[test]
    fn single_negative_edge() {
        let r = bellman_ford(&graph(2, &[(0, 1, -3)]), 0).unwrap();
        assert_eq!(r.dist, vec![Ext::zero(), Ext::Finite(int(-3))]);
    }

    #[test]
    fn two_cycle_with_negative_total() {
        let err = bellman_ford(&graph(2, &[(0, 1, 1), (1, 0, -2)]), 0).unwrap_err();
        let mut ids = err.0.clone();
        ids.sort();
        assert_eq!(ids, vec![0, 1]);
    }

    #[test]
    fn line_distances() {
        let r = bellman_ford(&graph(3, &[(0, 1, 2), (1, 2, 3)]), 0).unwrap();
        assert_eq!(r.dist, vec![Ext::zero(), Ext::Finite(int(2)), Ext::Finite(int(5))]);
        assert_eq!(r.parent, vec![None, Some(0), Some(1)]);
    }

    #[test]
    fn negative_self_loop_is_a_cycle() {
        let err = bellman_ford(&graph(1, &[(0, 0, -1)]), 0).unwrap_err();
        assert_eq!(err.0, vec![0]);
    }

    #[test]
    fn unreachable_negative_cycle_is_ignored() {
        let g = graph(3, &[(0, 1, 1), (2, 2, -5)]);
        let r = bellman_ford(&g, 0).unwrap();
        assert_eq!(r.dist[2], Ext::PosInf);
        assert!(bellman_ford_virtual_source(&g).is_err());
    }

    #[test]
    fn virtual_source_examples() {
        assert_eq!(
            bellman_ford_virtual_source(&graph(2, &[(0, 1, 4)])).unwrap(),
            vec![int(0), int(0)]
        );
        assert_eq!(
            bellman_ford_virtual_source(&graph(2, &[(0, 1, -1)])).unwrap(),
            vec![int(0), int(-1)]
        );
        assert!(bellman_ford_virtual_source(&graph(2, &[(0, 1, 1), (1, 0, -2)])).is_err());
    }

    #[test]
    fn extracted_cycle_is_closed_and_negative() {
        let g = graph(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 3, -1), (3, 1, -2), (3, 4, 0)],
        );
        let NegativeCycle(c) = bellman_ford(&g, 0).unwrap_err();
        assert!(g.path_length(&c) < int(0));
        for w in c.windows(2) {
            assert_eq!(g.edges[w[0]].dst, g.edges[w[1]].src);
        }
        assert_eq!(g.edges[*c.last().unwrap()].dst, g.edges[c[0]].src);
    }

    #[test]
    fn walk_distances_mark_downstream_of_cycles() {
        let g = graph(4, &[(0, 1, 1), (1, 1, -1), (1, 2, 0), (3, 0, 0)]);
        let d = bellman_ford_walk_distances(&g, 0);
        assert_eq!(d, vec![Ext::zero(), Ext::NegInf, Ext::NegInf, Ext::PosInf]);
    }
}
