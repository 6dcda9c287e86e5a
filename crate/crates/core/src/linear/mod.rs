//! Exact single-source shortest paths for linear weights: one preprocessing
//! pass, then one Dijkstra run per value of `x`.

mod instantiate;

use thiserror::Error;

use crate::feasibility::{compute_interval, FeasibilityError, FeasibleInterval};
use crate::graph::{Memo, ParametricGraph};
use crate::poly::Ext;
use crate::reweight::{
    potentials_doubly_infinite, potentials_finite, potentials_half_infinite, Direction,
    ReweightError, VertexPotential,
};

use instantiate::Prepared;
pub use instantiate::{instantiate_sssp, LinearInstance, SsspOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinearError {
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error(transparent)]
    Reweight(#[from] ReweightError),
    #[error("advice was built for graph {expected}, got {found}")]
    AdviceMismatch { expected: String, found: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAdvice {
    pub interval: FeasibleInterval,
    /// One family, or two (for `(-inf, 0]` then `[0, +inf)`) when the interval
    /// is the whole line.
    pub families: Vec<VertexPotential>,
    pub graph_hash: String,
    pub(crate) prepared: Memo<Prepared>,
}

impl LinearAdvice {
    pub fn new(interval: FeasibleInterval, families: Vec<VertexPotential>, graph_hash: String) -> Self {
        LinearAdvice {
            interval,
            families,
            graph_hash,
            prepared: Memo::default(),
        }
    }

    pub fn n(&self) -> usize {
        self.families.first().map_or(0, |f| f.funcs.len())
    }
}

pub fn preprocess_linear(g: &ParametricGraph) -> Result<LinearAdvice, LinearError> {
    let interval = compute_interval(g)?;
    let families = match (&interval.alpha, &interval.beta) {
        (Ext::Finite(a), Ext::Finite(b)) => vec![potentials_finite(g, a, b)?],
        (Ext::Finite(a), Ext::PosInf) => {
            vec![potentials_half_infinite(g, a, Direction::PlusInfinity)?]
        }
        (Ext::NegInf, Ext::Finite(b)) => {
            vec![potentials_half_infinite(g, b, Direction::MinusInfinity)?]
        }
        _ => {
            let (minus, plus) = potentials_doubly_infinite(g)?;
            vec![minus, plus]
        }
    };
    Ok(LinearAdvice::new(interval, families, g.content_hash()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bellman_ford, Edge};
    use crate::poly::{int, ratio, Poly, Rational};

    fn g(n: usize, edges: &[(usize, usize, &[i64])]) -> ParametricGraph {
        ParametricGraph::from_edges(n, edges.iter().map(|&(s, d, c)| (s, d, Poly::from_ints(c))))
            .unwrap()
    }

    fn distances(out: SsspOutcome) -> Vec<Ext> {
        match out {
            SsspOutcome::Distances(d) => d.dist,
            SsspOutcome::MinusInfinity => panic!("unexpected -inf"),
        }
    }

    #[test]
    fn case_selection() {
        let dag = g(3, &[(0, 1, &[1, 1]), (1, 2, &[0, -1])]);
        let a = preprocess_linear(&dag).unwrap();
        assert!(a.interval.is_doubly_infinite());
        assert_eq!(a.families.len(), 2);

        let one = g(2, &[(0, 1, &[0, 1]), (1, 0, &[-1])]);
        let a = preprocess_linear(&one).unwrap();
        assert_eq!(a.interval.alpha, Ext::Finite(int(1)));
        assert_eq!(a.families.len(), 1);
        assert_eq!(a.families[0].hi, Ext::PosInf);

        let bad = g(1, &[(0, 0, &[-1])]);
        assert!(matches!(
            preprocess_linear(&bad),
            Err(LinearError::Feasibility(FeasibilityError::NeverFeasible { .. }))
        ));
    }

    #[test]
    fn single_edge_matches_bellman_ford() {
        let t = g(2, &[(0, 1, &[-1, 1])]);
        let a = preprocess_linear(&t).unwrap();
        let d = distances(instantiate_sssp(&a, &t, 0, &int(0)).unwrap());
        assert_eq!(d[1], Ext::Finite(int(-1)));
        assert_eq!(d, bellman_ford(&t.instantiate(&int(0)), 0).unwrap().dist);
    }

    #[test]
    fn outside_interval_is_minus_infinity() {
        let t = g(2, &[(0, 1, &[0, 1]), (1, 0, &[-1])]);
        let a = preprocess_linear(&t).unwrap();
        assert_eq!(instantiate_sssp(&a, &t, 0, &int(0)).unwrap(), SsspOutcome::MinusInfinity);
        let d = distances(instantiate_sssp(&a, &t, 0, &int(1)).unwrap());
        assert_eq!(d, vec![Ext::zero(), Ext::Finite(int(1))]);
    }

    #[test]
    fn isolated_source() {
        let t = g(3, &[(1, 2, &[1, 0])]);
        let a = preprocess_linear(&t).unwrap();
        let d = distances(instantiate_sssp(&a, &t, 0, &int(5)).unwrap());
        assert_eq!(d, vec![Ext::zero(), Ext::PosInf, Ext::PosInf]);
    }

    #[test]
    fn every_case_agrees_with_bellman_ford() {
        let graphs = [
            g(3, &[(0, 1, &[2, -1]), (1, 2, &[-3, 2]), (0, 2, &[1, 0])]),
            g(3, &[(0, 1, &[0, 1]), (1, 0, &[-1]), (1, 2, &[6, -2]), (2, 1, &[0])]),
            g(3, &[(0, 1, &[3, -1]), (1, 0, &[0]), (1, 2, &[-4, 0])]),
            g(2, &[(0, 1, &[-2, 1]), (1, 0, &[2, 0])]),
        ];
        let rs: Vec<Rational> = (-8..=8).map(|k| ratio(k, 2)).collect();
        for t in &graphs {
            let a = preprocess_linear(t).unwrap();
            let inst = LinearInstance::new(&a, t).unwrap();
            for r in &rs {
                for s in 0..t.n() {
                    let bf = bellman_ford(&t.instantiate(r), s);
                    match inst.sssp(s, r) {
                        SsspOutcome::MinusInfinity => assert!(!a.interval.contains(r)),
                        SsspOutcome::Distances(d) => {
                            assert_eq!(d.dist, bf.unwrap().dist);
                            let edges: Vec<Edge> = t.edges().to_vec();
                            for v in 0..t.n() {
                                if let Some(p) = d.path_to(v, &edges) {
                                    assert_eq!(Ext::Finite(t.path_weight(&p).evaluate(r)), d.dist[v]);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mismatched_graph_is_rejected() {
        let t = g(2, &[(0, 1, &[1, 1])]);
        let other = g(2, &[(0, 1, &[1, 2])]);
        let a = preprocess_linear(&t).unwrap();
        assert!(matches!(
            instantiate_sssp(&a, &other, 0, &int(0)),
            Err(LinearError::AdviceMismatch { .. })
        ));
    }

    #[test]
    fn query_side_never_runs_bellman_ford() {
        let src = include_str!("instantiate.rs");
        assert!(!src.to_lowercase().contains("bellman"));
    }
}
