use std::collections::VecDeque;
use std::sync::Arc;

use rayon::prelude::*;

use super::{
    min_envelope_tol, min_sum, MinBase, MinBaseError, NegativeRegion, PathTag, Piece,
};
use crate::graph::{ParametricGraph, VertexId};
use crate::poly::{default_tolerance, Ext, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest number of pieces any single minBase may reach.
    pub piece_cap: usize,
    /// Bracket width for inexact roots.
    pub tol: Rational,
    /// Only values of `x` in this closed range will be queried.
    pub domain: Option<(Rational, Rational)>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            piece_cap: 1_000_000,
            tol: default_tolerance(),
            domain: None,
        }
    }
}

/// Work done by one query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub final_comparisons: usize,
    pub check_comparisons: usize,
    pub region_comparisons: usize,
    pub value_comparisons: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryAnswer {
    pub value: Ext,
    pub tag: Option<Arc<PathTag>>,
    /// `x` fell within the tolerance of an inexact break.
    pub approximate: bool,
    pub stats: QueryStats,
}

/// Distance functions for every ordered pair, at two consecutive doubling
/// levels, plus the set of `x` where a negative cycle sits on a `u -> v` walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairOracle {
    n: usize,
    level: usize,
    tol: Rational,
    domain: Option<(Rational, Rational)>,
    finals: Vec<MinBase>,
    checks: Vec<MinBase>,
    regions: Vec<NegativeRegion>,
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

impl PairOracle {
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        n: usize,
        level: usize,
        tol: Rational,
        domain: Option<(Rational, Rational)>,
        finals: Vec<MinBase>,
        checks: Vec<MinBase>,
        regions: Vec<NegativeRegion>,
    ) -> Result<Self, MinBaseError> {
        if finals.len() != n * n || checks.len() != n * n || regions.len() != n * n {
            return Err(MinBaseError::Malformed);
        }
        Ok(PairOracle {
            n,
            level,
            tol,
            domain,
            finals,
            checks,
            regions,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Doubling level of the final table; the check table is one above.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn tol(&self) -> &Rational {
        &self.tol
    }

    pub fn domain(&self) -> Option<&(Rational, Rational)> {
        self.domain.as_ref()
    }

    pub fn final_base(&self, u: VertexId, v: VertexId) -> &MinBase {
        &self.finals[u * self.n + v]
    }

    pub fn check_base(&self, u: VertexId, v: VertexId) -> &MinBase {
        &self.checks[u * self.n + v]
    }

    pub fn region(&self, u: VertexId, v: VertexId) -> &NegativeRegion {
        &self.regions[u * self.n + v]
    }

    pub fn max_size(&self) -> usize {
        self.finals.iter().chain(&self.checks).map(MinBase::size).max().unwrap_or(0)
    }

    pub fn total_pieces(&self) -> usize {
        self.finals.iter().chain(&self.checks).map(MinBase::piece_count).sum()
    }

    pub fn query(&self, u: VertexId, v: VertexId, r: &Rational) -> Result<QueryAnswer, MinBaseError> {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if let Some((lo, hi)) = &self.domain {
            if r < lo || r > hi {
                return Err(MinBaseError::OutOfDomain { r: r.clone() });
            }
        }
        let (fin, chk, reg) = (self.final_base(u, v), self.check_base(u, v), self.region(u, v));
        let (fi, fc) = fin.locate(r);
        let (ci, cc) = chk.locate(r);
        let (negative, rc) = reg.contains(r);
        let seg = &fin.segments()[fi];
        let value = seg.piece.evaluate(r);
        let differs = value != chk.segments()[ci].piece.evaluate(r);
        let approximate = fin.near_inexact_break(r, &self.tol)
            || chk.near_inexact_break(r, &self.tol)
            || reg.near_inexact_point(r, &self.tol);
        let stats = QueryStats {
            final_comparisons: fc,
            check_comparisons: cc,
            region_comparisons: rc,
            value_comparisons: 1,
        };
        // Near an inexact break the two levels may place it a hair apart.
        if negative || (differs && !approximate) {
            return Ok(QueryAnswer {
                value: Ext::NegInf,
                tag: None,
                approximate,
                stats,
            });
        }
        Ok(QueryAnswer {
            value,
            tag: seg.tag.clone(),
            approximate,
            stats,
        })
    }
}

pub fn build_pair_oracle(g: &ParametricGraph, config: &OracleConfig) -> Result<PairOracle, MinBaseError> {
    let n = g.n();
    let tol = &config.tol;
    let finish = |m: MinBase| -> Result<MinBase, MinBaseError> {
        let m = match &config.domain {
            Some((lo, hi)) => m.clip(lo, hi),
            None => m,
        };
        if m.piece_count() > config.piece_cap {
            return Err(MinBaseError::SizeBudgetExceeded {
                pieces: m.piece_count(),
                cap: config.piece_cap,
            });
        }
        Ok(m)
    };

    let mut level0 = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let mut direct: Vec<MinBase> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.src == u && e.dst == v)
                .map(|(id, e)| MinBase::poly(e.weight.clone(), Some(Arc::new(PathTag::Edge(id)))))
                .collect();
            if u == v {
                direct.insert(0, MinBase::poly(Poly::zero(), Some(Arc::new(PathTag::Empty))));
            }
            level0.push(finish(min_envelope_tol(&direct, tol))?);
        }
    }

    let top = ceil_log2(n);
    let mut cur = level0;
    let mut finals = None;
    for level in 1..=top + 1 {
        if level - 1 == top {
            finals = Some(cur.clone());
        }
        let prev = &cur;
        cur = (0..n * n)
            .into_par_iter()
            .map(|uv| {
                let (u, v) = (uv / n, uv % n);
                let routes: Vec<MinBase> = (0..n)
                    .filter(|&w| !is_unreachable(&prev[u * n + w]) && !is_unreachable(&prev[w * n + v]))
                    .map(|w| min_sum(&prev[u * n + w], &prev[w * n + v]))
                    .collect();
                finish(min_envelope_tol(&routes, tol))
            })
            .collect::<Result<_, _>>()?;
    }
    let finals = finals.unwrap_or_default();
    let checks = cur;

    let reach = reachability(g);
    let self_negative: Vec<bool> = (0..n)
        .map(|w| !NegativeRegion::of(&finals[w * n + w], tol).is_empty())
        .collect();
    let regions = (0..n * n)
        .into_par_iter()
        .map(|uv| {
            let (u, v) = (uv / n, uv % n);
            let loops: Vec<MinBase> = (0..n)
                .filter(|&w| self_negative[w] && reach[u][w] && reach[w][v])
                .map(|w| finals[w * n + w].clone())
                .collect();
            if loops.is_empty() {
                NegativeRegion::empty()
            } else {
                NegativeRegion::of(&min_envelope_tol(&loops, tol), tol)
            }
        })
        .collect();

    Ok(PairOracle {
        n,
        level: top,
        tol: tol.clone(),
        domain: config.domain.clone(),
        finals,
        checks,
        regions,
    })
}

fn is_unreachable(m: &MinBase) -> bool {
    m.size() == 0 && m.segments()[0].piece == Piece::PosInf
}

// Reflexive reachability over the edge structure (weights never remove edges).
fn reachability(g: &ParametricGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut out = vec![Vec::new(); n];
    for e in g.edges() {
        out[e.src].push(e.dst);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &out[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bellman_ford_walk_distances;
    use crate::oracle::BruteForce;
    use crate::poly::{int, ratio};

    fn g(n: usize, edges: &[(usize, usize, &[i64])]) -> ParametricGraph {
        ParametricGraph::from_edges(n, edges.iter().map(|&(s, d, c)| (s, d, Poly::from_ints(c))))
            .unwrap()
    }

    fn build(t: &ParametricGraph) -> PairOracle {
        build_pair_oracle(t, &OracleConfig::default()).unwrap()
    }

    #[test]
    fn single_edge_base_case() {
        let t = g(2, &[(0, 1, &[1, 2])]);
        let o = build(&t);
        assert_eq!(o.final_base(0, 1), &MinBase::poly(Poly::from_ints(&[1, 2]), Some(Arc::new(PathTag::Edge(0)))));
    }

    #[test]
    fn parallel_routes() {
        let t = g(3, &[(0, 2, &[0, 2]), (0, 1, &[1]), (1, 2, &[1])]);
        let o = build(&t);
        let f = o.final_base(0, 2);
        assert_eq!(f.breaks().iter().map(|b| b.at.clone()).collect::<Vec<_>>(), vec![int(1)]);
        let a = o.query(0, 2, &ratio(1, 2)).unwrap();
        assert_eq!(a.value, Ext::Finite(int(1)));
        assert_eq!(a.tag.unwrap().edges(), vec![0]);
        let b = o.query(0, 2, &int(3)).unwrap();
        assert_eq!(b.value, Ext::Finite(int(2)));
        assert_eq!(b.tag.unwrap().edges(), vec![1, 2]);
        assert_eq!(o.query(2, 0, &int(0)).unwrap().value, Ext::PosInf);
    }

    #[test]
    fn triangle_goes_negative_right_of_zero() {
        let t = g(3, &[(0, 1, &[0, -1]), (1, 2, &[0]), (2, 0, &[0])]);
        let o = build(&t);
        let r = int(1);
        assert_ne!(o.final_base(0, 0).evaluate(&r), o.check_base(0, 0).evaluate(&r));
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(o.query(u, v, &r).unwrap().value, Ext::NegInf);
                assert!(o.query(u, v, &int(-1)).unwrap().value.is_finite());
            }
        }
    }

    #[test]
    fn levels_can_agree_while_a_cycle_hangs_off_the_route() {
        // The cheap route bypasses the loop, so both levels report 0, yet the
        // loop at 2 is on a 0 -> 1 walk.
        let t = g(3, &[(0, 1, &[0]), (0, 2, &[100]), (2, 2, &[-1]), (2, 1, &[100])]);
        let o = build(&t);
        let r = int(0);
        assert_eq!(o.final_base(0, 1).evaluate(&r), o.check_base(0, 1).evaluate(&r));
        assert_eq!(o.query(0, 1, &r).unwrap().value, Ext::NegInf);
        assert_eq!(bellman_ford_walk_distances(&t.instantiate(&r), 0)[1], Ext::NegInf);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        let graphs = [
            g(4, &[(0, 1, &[1, -1]), (1, 2, &[0, 1, 1]), (2, 3, &[2]), (0, 3, &[0, 0, 1]), (3, 0, &[1, 1])]),
            g(3, &[(0, 1, &[2, 1]), (1, 0, &[-1, -2]), (1, 2, &[0, 0, -1]), (0, 2, &[3])]),
        ];
        for t in &graphs {
            let o = build(t);
            let bf = BruteForce::new(t).unwrap();
            for k in -12..=12 {
                let r = ratio(k, 3);
                for u in 0..t.n() {
                    for v in 0..t.n() {
                        let got = o.query(u, v, &r).unwrap();
                        assert_eq!(got.value, bf.distance(u, v, &r), "u={u} v={v} r={r}");
                        if let (Ext::Finite(val), Some(tag)) = (&got.value, &got.tag) {
                            assert_eq!(&t.path_weight(&tag.edges()).evaluate(&r), val);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn domain_hint_restricts_queries_and_breaks() {
        let t = g(3, &[(0, 2, &[0, 2]), (0, 1, &[1]), (1, 2, &[1])]);
        let config = OracleConfig {
            domain: Some((int(2), int(5))),
            ..OracleConfig::default()
        };
        let o = build_pair_oracle(&t, &config).unwrap();
        assert_eq!(o.final_base(0, 2).size(), 0);
        assert_eq!(o.query(0, 2, &int(3)).unwrap().value, Ext::Finite(int(2)));
        assert!(matches!(o.query(0, 2, &int(0)), Err(MinBaseError::OutOfDomain { .. })));
    }

    #[test]
    fn piece_cap_is_enforced() {
        let t = g(3, &[(0, 2, &[0, 2]), (0, 1, &[1]), (1, 2, &[1])]);
        let config = OracleConfig {
            piece_cap: 1,
            ..OracleConfig::default()
        };
        assert!(matches!(
            build_pair_oracle(&t, &config),
            Err(MinBaseError::SizeBudgetExceeded { cap: 1, .. })
        ));
    }

    #[test]
    fn query_cost_is_logarithmic() {
        let t = g(4, &[(0, 1, &[1, -1]), (1, 2, &[0, 1, 1]), (2, 3, &[2]), (0, 3, &[0, 0, 1])]);
        let o = build(&t);
        for k in -20..=20 {
            let a = o.query(0, 3, &ratio(k, 4)).unwrap();
            let t = o.final_base(0, 3).size();
            let bound = (usize::BITS - (t + 1).leading_zeros()) as usize + 1;
            assert!(a.stats.final_comparisons + a.stats.value_comparisons <= bound);
        }
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!([1, 2, 3, 4, 5, 8, 9].map(ceil_log2), [0, 1, 2, 2, 3, 3, 4]);
    }
}
