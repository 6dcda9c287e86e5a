//! All-pairs shortest paths restricted to a maximum number of vertices, by
//! min-plus exponentiation.
//!
//! A path with `k` vertices has `k - 1` edges, so the limit `k` is reached by
//! raising the one-edge matrix (zero diagonal) to the power `k - 1` with
//! repeated squaring. Every product keeps the argmin midpoint per entry, which
//! is enough to rebuild any path afterwards.

use std::ops::Add;

use num::Zero;

use super::{EdgeId, InstantiatedGraph, VertexId};
use crate::poly::{Ext, Rational};

const NONE: u32 = u32::MAX;

/// One node of the product tree that produced the final matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinPlusFactor {
    /// Paths of a single vertex.
    Identity,
    /// Cheapest direct edge per `(u, v)`, row-major; `u32::MAX` where absent
    /// and on the diagonal.
    Edges(Vec<u32>),
    /// `left ⊗ right`; `mid[u * n + v]` is the chosen split vertex.
    Product {
        left: usize,
        right: usize,
        mid: Vec<u32>,
    },
}

#[derive(Clone, Debug)]
pub struct HopLimitedApsp<W> {
    n: usize,
    max_vertices: usize,
    dist: Vec<Option<W>>,
    factors: Vec<MinPlusFactor>,
    root: usize,
}

impl<W> HopLimitedApsp<W> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn max_vertices(&self) -> usize {
        self.max_vertices
    }

    /// Hop-limited length, `None` when no path fits the limit.
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<&W> {
        self.dist[u * self.n + v].as_ref()
    }

    pub fn factors(&self) -> &[MinPlusFactor] {
        &self.factors
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Edge ids of the stored `u -> v` path.
    pub fn path(&self, u: VertexId, v: VertexId) -> Option<Vec<EdgeId>> {
        self.get(u, v)?;
        let mut out = Vec::new();
        expand(&self.factors, self.n, self.root, u, v, &mut out);
        Some(out)
    }

    /// Drops the distance matrix, keeping only what path rebuilding needs.
    pub fn into_parts(self) -> (Vec<Option<W>>, Vec<MinPlusFactor>, usize) {
        (self.dist, self.factors, self.root)
    }
}

impl HopLimitedApsp<Rational> {
    pub fn distance(&self, u: VertexId, v: VertexId) -> Ext {
        Ext::from(self.get(u, v).cloned())
    }
}

/// Rebuilds a path from a factor tree without the distance matrix.
pub fn expand(
    factors: &[MinPlusFactor],
    n: usize,
    id: usize,
    u: VertexId,
    v: VertexId,
    out: &mut Vec<EdgeId>,
) {
    match &factors[id] {
        MinPlusFactor::Identity => {}
        MinPlusFactor::Edges(best) => {
            let e = best[u * n + v];
            if e != NONE {
                out.push(e as EdgeId);
            }
        }
        MinPlusFactor::Product { left, right, mid } => {
            let w = mid[u * n + v] as usize;
            expand(factors, n, *left, u, w, out);
            expand(factors, n, *right, w, v, out);
        }
    }
}

/// Exact version over an instantiated graph.
pub fn hop_limited_apsp(g: &InstantiatedGraph, max_vertices: usize) -> HopLimitedApsp<Rational> {
    hop_limited_apsp_by(
        g.n,
        g.edges.iter().map(|e| (e.src, e.dst, e.weight.clone())),
        max_vertices,
    )
}

/// Generic version; edges are `(src, dst, weight)` with edge id = position.
///
/// Self-loops never lie on a path and are ignored.
///
/// # Panics
/// If `max_vertices == 0`.
pub fn hop_limited_apsp_by<W>(
    n: usize,
    edges: impl IntoIterator<Item = (VertexId, VertexId, W)>,
    max_vertices: usize,
) -> HopLimitedApsp<W>
where
    W: Clone + PartialOrd + Zero,
    for<'a> &'a W: Add<&'a W, Output = W>,
{
    assert!(max_vertices >= 1, "a path has at least one vertex");
    let mut identity = vec![None; n * n];
    for u in 0..n {
        identity[u * n + u] = Some(W::zero());
    }
    let steps = max_vertices - 1;
    if steps == 0 || n == 0 {
        return HopLimitedApsp {
            n,
            max_vertices,
            dist: identity,
            factors: vec![MinPlusFactor::Identity],
            root: 0,
        };
    }

    let mut base = identity;
    let mut best = vec![NONE; n * n];
    for (id, (s, d, w)) in edges.into_iter().enumerate() {
        if s == d {
            continue;
        }
        let slot = &mut base[s * n + d];
        if slot.as_ref().is_none_or(|cur| w < *cur) {
            *slot = Some(w);
            best[s * n + d] = id as u32;
        }
    }

    let mut factors = vec![MinPlusFactor::Edges(best)];
    let mut power = (base, 0usize);
    let mut acc: Option<(Vec<Option<W>>, usize)> = None;
    let mut e = steps;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => power.clone(),
                Some(a) => multiply(n, &a, &power, &mut factors),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        power = multiply(n, &power, &power, &mut factors);
    }
    let (dist, root) = acc.expect("steps >= 1");
    HopLimitedApsp {
        n,
        max_vertices,
        dist,
        factors,
        root,
    }
}

fn multiply<W>(
    n: usize,
    a: &(Vec<Option<W>>, usize),
    b: &(Vec<Option<W>>, usize),
    factors: &mut Vec<MinPlusFactor>,
) -> (Vec<Option<W>>, usize)
where
    W: Clone + PartialOrd,
    for<'x> &'x W: Add<&'x W, Output = W>,
{
    let (da, db) = (&a.0, &b.0);
    let mut out: Vec<Option<W>> = vec![None; n * n];
    let mut mid = vec![NONE; n * n];
    for u in 0..n {
        for w in 0..n {
            let Some(uw) = &da[u * n + w] else { continue };
            for v in 0..n {
                let Some(wv) = &db[w * n + v] else { continue };
                let cand = uw + wv;
                let slot = &mut out[u * n + v];
                if slot.as_ref().is_none_or(|cur| cand < *cur) {
                    *slot = Some(cand);
                    mid[u * n + v] = w as u32;
                }
            }
        }
    }
    factors.push(MinPlusFactor::Product {
        left: a.1,
        right: b.1,
        mid,
    });
    (out, factors.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn line() -> InstantiatedGraph {
        InstantiatedGraph::from_edges(3, [(0, 1, int(1)), (1, 2, int(1))]).unwrap()
    }

    #[test]
    fn two_vertices_means_direct_edges() {
        let g = InstantiatedGraph::from_edges(2, [(0, 1, int(5)), (0, 1, int(3))]).unwrap();
        let h = hop_limited_apsp(&g, 2);
        assert_eq!(h.distance(0, 1), Ext::Finite(int(3)));
        assert_eq!(h.distance(0, 0), Ext::zero());
        assert_eq!(h.path(0, 1), Some(vec![1]));
    }

    #[test]
    fn line_needs_three_vertices() {
        let g = line();
        assert_eq!(hop_limited_apsp(&g, 2).distance(0, 2), Ext::PosInf);
        let h = hop_limited_apsp(&g, 3);
        assert_eq!(h.distance(0, 2), Ext::Finite(int(2)));
        assert_eq!(h.path(0, 2), Some(vec![0, 1]));
    }

    #[test]
    fn single_vertex_limit_is_identity() {
        let h = hop_limited_apsp(&line(), 1);
        assert_eq!(h.distance(0, 0), Ext::zero());
        assert_eq!(h.distance(0, 1), Ext::PosInf);
        assert_eq!(h.path(1, 1), Some(vec![]));
    }

    #[test]
    fn exact_limit_not_rounded_to_power_of_two() {
        // 0->1->2->3->4 costs 4, shortcut 0->4 costs 10.
        let g = InstantiatedGraph::from_edges(
            5,
            [
                (0, 1, int(1)),
                (1, 2, int(1)),
                (2, 3, int(1)),
                (3, 4, int(1)),
                (0, 4, int(10)),
            ],
        )
        .unwrap();
        assert_eq!(hop_limited_apsp(&g, 4).distance(0, 4), Ext::Finite(int(10)));
        assert_eq!(hop_limited_apsp(&g, 5).distance(0, 4), Ext::Finite(int(4)));
    }
}
