//! Exhaustive reference answers for small graphs.
//!
//! Nothing here shares code with the pipelines it is used to check: cycles
//! and paths are enumerated outright and evaluated directly.

use std::collections::BTreeSet;

use num::{Signed, Zero};
use thiserror::Error;

use crate::feasibility::FeasibleInterval;
use crate::graph::{EdgeId, ParametricGraph, VertexId};
use crate::poly::{Ext, Poly, Rational};

/// Default vertex-count ceiling for enumeration.
pub const DEFAULT_BOUND: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices; enumeration is limited to {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("edge weights must be linear, found degree {degree}")]
    NotLinear { degree: usize },
    #[error("no value of x avoids every negative cycle")]
    NeverFeasible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleCycle {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
    pub weight: Poly,
}

fn check_bound(g: &ParametricGraph, bound: usize) -> Result<(), OracleError> {
    if g.n() > bound {
        Err(OracleError::BoundExceeded { n: g.n(), bound })
    } else {
        Ok(())
    }
}

pub fn enumerate_simple_cycles(g: &ParametricGraph) -> Result<Vec<SimpleCycle>, OracleError> {
    enumerate_simple_cycles_bounded(g, DEFAULT_BOUND)
}

/// Every simple directed cycle exactly once, rotated to start at its smallest
/// vertex. Parallel edges give distinct cycles.
pub fn enumerate_simple_cycles_bounded(
    g: &ParametricGraph,
    bound: usize,
) -> Result<Vec<SimpleCycle>, OracleError> {
    check_bound(g, bound)?;
    let n = g.n();
    let succ: Vec<BTreeSet<VertexId>> = (0..n)
        .map(|v| g.edges().iter().filter(|e| e.src == v).map(|e| e.dst).collect())
        .collect();

    let mut vertex_cycles = Vec::new();
    for s in 0..n {
        let mut search = Circuits {
            succ: &succ,
            start: s,
            blocked: vec![false; n],
            blocked_by: vec![Vec::new(); n],
            stack: Vec::new(),
            out: &mut vertex_cycles,
        };
        search.circuit(s);
    }

    let mut cycles = Vec::new();
    for vc in vertex_cycles {
        let hops: Vec<Vec<EdgeId>> = (0..vc.len())
            .map(|i| {
                let (a, b) = (vc[i], vc[(i + 1) % vc.len()]);
                g.edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.src == a && e.dst == b)
                    .map(|(id, _)| id)
                    .collect()
            })
            .collect();
        for edges in cartesian(&hops) {
            cycles.push(SimpleCycle {
                weight: g.path_weight(&edges),
                vertices: vc.clone(),
                edges,
            });
        }
    }
    Ok(cycles)
}

fn cartesian(choices: &[Vec<EdgeId>]) -> Vec<Vec<EdgeId>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&e| {
                    let mut p = prefix.clone();
                    p.push(e);
                    p
                })
            })
            .collect()
    })
}

// Johnson's circuit search restricted to vertices >= start.
struct Circuits<'a> {
    succ: &'a [BTreeSet<VertexId>],
    start: VertexId,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<VertexId>>,
    stack: Vec<VertexId>,
    out: &'a mut Vec<Vec<VertexId>>,
}

impl Circuits<'_> {
    fn circuit(&mut self, v: VertexId) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let (succ, start) = (self.succ, self.start);
        for &w in succ[v].iter().filter(|&&w| w >= start) {
            if w == start {
                self.out.push(self.stack.clone());
                found = true;
            } else if !self.blocked[w] && self.circuit(w) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in succ[v].iter().filter(|&&w| w >= start) {
                if !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }

    fn unblock(&mut self, u: VertexId) {
        self.blocked[u] = false;
        for w in std::mem::take(&mut self.blocked_by[u]) {
            if self.blocked[w] {
                self.unblock(w);
            }
        }
    }
}

/// Feasible interval straight from the cycle list: the largest root among
/// rising cycle weights and the smallest among falling ones.
pub fn brute_interval(g: &ParametricGraph) -> Result<FeasibleInterval, OracleError> {
    if !g.is_linear() {
        return Err(OracleError::NotLinear {
            degree: g.degree_bound(),
        });
    }
    let mut interval = FeasibleInterval::unbounded();
    for c in enumerate_simple_cycles(g)? {
        let (a, b) = (c.weight.slope(), c.weight.intercept());
        if a.is_zero() {
            if b.is_negative() {
                return Err(OracleError::NeverFeasible);
            }
            continue;
        }
        let root = Ext::Finite(-b / &a);
        if a.is_positive() && root > interval.alpha {
            interval.alpha = root;
            interval.alpha_witness = Some(c.edges);
        } else if a.is_negative() && root < interval.beta {
            interval.beta = root;
            interval.beta_witness = Some(c.edges);
        }
    }
    if interval.alpha > interval.beta {
        return Err(OracleError::NeverFeasible);
    }
    Ok(interval)
}

/// All simple `u -> v` paths with their weight polynomials.
#[derive(Clone, Debug)]
pub struct PathEnumeration {
    pub u: VertexId,
    pub v: VertexId,
    pub paths: Vec<(Vec<EdgeId>, Poly)>,
}

pub fn enumerate_simple_paths(
    g: &ParametricGraph,
    u: VertexId,
    v: VertexId,
) -> Result<PathEnumeration, OracleError> {
    check_bound(g, DEFAULT_BOUND)?;
    let mut paths = Vec::new();
    let mut visited = vec![false; g.n()];
    let mut stack = Vec::new();
    walk_paths(g, u, &mut visited, &mut stack, &mut |end, p| {
        if end == v {
            paths.push((p.to_vec(), g.path_weight(p)));
        }
    });
    Ok(PathEnumeration { u, v, paths })
}

fn walk_paths(
    g: &ParametricGraph,
    at: VertexId,
    visited: &mut [bool],
    stack: &mut Vec<EdgeId>,
    visit: &mut impl FnMut(VertexId, &[EdgeId]),
) {
    visit(at, stack);
    visited[at] = true;
    for (id, e) in g.edges().iter().enumerate() {
        if e.src == at && !visited[e.dst] {
            stack.push(id);
            walk_paths(g, e.dst, visited, stack, visit);
            stack.pop();
        }
    }
    visited[at] = false;
}

/// Precomputed brute force for repeated pair-distance lookups on one graph.
#[derive(Clone, Debug)]
pub struct BruteForce {
    n: usize,
    cycles: Vec<SimpleCycle>,
    reach: Vec<Vec<bool>>,
    // paths[u * n + v]: every simple u -> v path with its weight
    paths: Vec<Vec<(Vec<EdgeId>, Poly)>>,
}

impl BruteForce {
    pub fn new(g: &ParametricGraph) -> Result<Self, OracleError> {
        let n = g.n();
        let cycles = enumerate_simple_cycles(g)?;
        let mut paths = vec![Vec::new(); n * n];
        let mut reach = vec![vec![false; n]; n];
        for u in 0..n {
            let mut visited = vec![false; n];
            let mut stack = Vec::new();
            walk_paths(g, u, &mut visited, &mut stack, &mut |end, p| {
                reach[u][end] = true;
                paths[u * n + end].push((p.to_vec(), g.path_weight(p)));
            });
        }
        Ok(BruteForce {
            n,
            cycles,
            reach,
            paths,
        })
    }

    pub fn cycles(&self) -> &[SimpleCycle] {
        &self.cycles
    }

    pub fn reachable(&self, u: VertexId, v: VertexId) -> bool {
        self.reach[u][v]
    }

    /// Vertices lying on some cycle of negative weight at `r`.
    pub fn negative_cycle_vertices(&self, r: &Rational) -> Vec<bool> {
        let mut on = vec![false; self.n];
        for c in &self.cycles {
            if c.weight.evaluate(r).is_negative() {
                for &v in &c.vertices {
                    on[v] = true;
                }
            }
        }
        on
    }

    pub fn distance(&self, u: VertexId, v: VertexId, r: &Rational) -> Ext {
        let neg = self.negative_cycle_vertices(r);
        self.distance_with(u, v, r, &neg)
    }

    /// Like [`BruteForce::distance`] with the negative-cycle vertex set supplied.
    pub fn distance_with(&self, u: VertexId, v: VertexId, r: &Rational, neg: &[bool]) -> Ext {
        if (0..self.n).any(|w| neg[w] && self.reach[u][w] && self.reach[w][v]) {
            return Ext::NegInf;
        }
        self.paths[u * self.n + v]
            .iter()
            .map(|(_, w)| w.evaluate(r))
            .min()
            .map_or(Ext::PosInf, Ext::Finite)
    }

    /// A cheapest simple `u -> v` path at `r`, ignoring negative cycles.
    pub fn best_path(&self, u: VertexId, v: VertexId, r: &Rational) -> Option<Vec<EdgeId>> {
        self.paths[u * self.n + v]
            .iter()
            .min_by_key(|(_, w)| w.evaluate(r))
            .map(|(p, _)| p.clone())
    }
}

/// Minimum over simple `u -> v` paths at `r`; `-inf` when a cycle that is
/// negative at `r` sits on some `u -> v` walk.
pub fn brute_distance(
    g: &ParametricGraph,
    u: VertexId,
    v: VertexId,
    r: &Rational,
) -> Result<Ext, OracleError> {
    Ok(BruteForce::new(g)?.distance(u, v, r))
}
