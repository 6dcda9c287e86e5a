//! The closed interval of parameter values for which the graph has no
//! negative cycle.
//!
//! Every cycle weight is a line `A x + B`. Cycles with `A > 0` forbid
//! everything left of their root, cycles with `A < 0` everything right of it,
//! and constant negative cycles forbid everything. The endpoints are found by
//! probing: Bellman-Ford at a probe either certifies it or hands back a
//! negative cycle whose root is a strictly better bound, and the probe moves
//! there. Simple cycles are finite in number, so this stops.

use num::{Integer, One, Signed, Zero};
use thiserror::Error;

use crate::graph::{bellman_ford_virtual_source, EdgeId, ParametricGraph};
use crate::poly::{Ext, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FeasibilityError {
    #[error("edges {0:?} do not form a closed walk")]
    NotACycle(Vec<EdgeId>),
    #[error("edge weights must be linear, found degree {degree}")]
    NotLinear { degree: usize },
    #[error("every value of x leaves a negative cycle (witness edges {witness:?})")]
    NeverFeasible { witness: Vec<EdgeId> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleInterval {
    pub alpha: Ext,
    pub beta: Ext,
    /// Cycle whose weight vanishes at a finite `alpha`.
    pub alpha_witness: Option<Vec<EdgeId>>,
    /// Cycle whose weight vanishes at a finite `beta`.
    pub beta_witness: Option<Vec<EdgeId>>,
}

impl FeasibleInterval {
    pub fn unbounded() -> Self {
        FeasibleInterval {
            alpha: Ext::NegInf,
            beta: Ext::PosInf,
            alpha_witness: None,
            beta_witness: None,
        }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        let r = Ext::Finite(r.clone());
        self.alpha <= r && r <= self.beta
    }

    pub fn is_doubly_infinite(&self) -> bool {
        self.alpha == Ext::NegInf && self.beta == Ext::PosInf
    }
}

/// Sum of the edge polynomials of a closed walk.
pub fn cycle_weight(g: &ParametricGraph, cycle: &[EdgeId]) -> Result<Poly, FeasibilityError> {
    let not_a_cycle = || FeasibilityError::NotACycle(cycle.to_vec());
    if cycle.is_empty() || cycle.iter().any(|&e| e >= g.edge_count()) {
        return Err(not_a_cycle());
    }
    for i in 0..cycle.len() {
        let next = cycle[(i + 1) % cycle.len()];
        if g.edge(cycle[i]).dst != g.edge(next).src {
            return Err(not_a_cycle());
        }
    }
    Ok(g.path_weight(cycle))
}

/// A magnitude beyond every cycle root.
///
/// With `L` the lcm of the slope denominators, a nonzero cycle slope is at
/// least `1/L` in absolute value, and a simple cycle's intercept is at most
/// `n * max|b|`, so every root lies strictly inside `(-M, M)` for
/// `M = 1 + n * max|b| * L`.
pub fn probe_bound(g: &ParametricGraph) -> Rational {
    let mut lcm = num::BigInt::one();
    let mut max_b = Rational::zero();
    for e in g.edges() {
        lcm = lcm.lcm(e.weight.slope().denom());
        max_b = max_b.max(e.weight.intercept().abs());
    }
    Rational::one() + Rational::from_integer((g.n() as i64).into()) * max_b * Rational::from_integer(lcm)
}

fn probe(g: &ParametricGraph, r: &Rational) -> Option<(Vec<EdgeId>, Rational, Rational)> {
    let cycle = bellman_ford_virtual_source(&g.instantiate(r)).err()?.0;
    let w = g.path_weight(&cycle);
    Some((cycle, w.slope(), w.intercept()))
}

pub fn compute_interval(g: &ParametricGraph) -> Result<FeasibleInterval, FeasibilityError> {
    if !g.is_linear() {
        return Err(FeasibilityError::NotLinear {
            degree: g.degree_bound(),
        });
    }
    let mut out = FeasibleInterval::unbounded();
    let mut r = Rational::zero();

    // Walk from 0 toward the feasible region; all moves go the same way.
    while let Some((cycle, a, b)) = probe(g, &r) {
        if a.is_zero() {
            return Err(FeasibilityError::NeverFeasible { witness: cycle });
        }
        let root = -b / &a;
        let bound = Ext::Finite(root.clone());
        if a.is_positive() {
            if bound > out.beta {
                return Err(FeasibilityError::NeverFeasible { witness: cycle });
            }
            out.alpha = bound;
            out.alpha_witness = Some(cycle);
        } else {
            if bound < out.alpha {
                return Err(FeasibilityError::NeverFeasible { witness: cycle });
            }
            out.beta = bound;
            out.beta_witness = Some(cycle);
        }
        r = root;
    }

    let m = probe_bound(g);
    if out.alpha == Ext::NegInf {
        if let Some((root, cycle)) = approach(g, -m.clone(), true) {
            out.alpha = Ext::Finite(root);
            out.alpha_witness = Some(cycle);
        }
    }
    if out.beta == Ext::PosInf {
        if let Some((root, cycle)) = approach(g, m, false) {
            out.beta = Ext::Finite(root);
            out.beta_witness = Some(cycle);
        }
    }
    Ok(out)
}

// From a far probe, step toward the (known nonempty) feasible region until a
// probe passes. Returns the last root and its cycle, or None if the far probe
// itself passes.
fn approach(g: &ParametricGraph, far: Rational, rising: bool) -> Option<(Rational, Vec<EdgeId>)> {
    let mut r = far;
    let mut found = None;
    while let Some((cycle, a, b)) = probe(g, &r) {
        assert_eq!(
            a.is_positive(),
            rising,
            "cycle slope points away from a feasible point"
        );
        r = -b / a;
        found = Some((r.clone(), cycle));
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_interval, OracleError};
    use crate::poly::{int, ratio};

    fn g(n: usize, edges: &[(usize, usize, &[i64])]) -> ParametricGraph {
        ParametricGraph::from_edges(n, edges.iter().map(|&(s, d, c)| (s, d, Poly::from_ints(c))))
            .unwrap()
    }

    #[test]
    fn cycle_weight_examples() {
        let t = g(2, &[(0, 1, &[1, 2]), (1, 0, &[-1, -2]), (0, 0, &[3, 1])]);
        assert_eq!(cycle_weight(&t, &[0, 1]).unwrap(), Poly::zero());
        assert_eq!(cycle_weight(&t, &[2]).unwrap(), Poly::from_ints(&[3, 1]));
        let t = g(2, &[(0, 1, &[0, 1]), (1, 0, &[1, 0])]);
        assert_eq!(cycle_weight(&t, &[0, 1]).unwrap(), Poly::from_ints(&[1, 1]));
        assert!(matches!(cycle_weight(&t, &[0]), Err(FeasibilityError::NotACycle(_))));
        assert!(matches!(cycle_weight(&t, &[]), Err(FeasibilityError::NotACycle(_))));
    }

    #[test]
    fn acyclic_is_unbounded() {
        let t = g(3, &[(0, 1, &[-5, 3]), (1, 2, &[2, -7])]);
        let i = compute_interval(&t).unwrap();
        assert!(i.is_doubly_infinite());
    }

    #[test]
    fn one_rising_cycle() {
        let t = g(2, &[(0, 1, &[0, 1]), (1, 0, &[-1])]);
        let i = compute_interval(&t).unwrap();
        assert_eq!(i.alpha, brute_interval(&t).unwrap().alpha);
        assert_eq!((i.alpha, i.beta), (Ext::Finite(int(1)), Ext::PosInf));
        let w = cycle_weight(&t, i.alpha_witness.as_ref().unwrap()).unwrap();
        assert_eq!(w.evaluate(&int(1)), int(0));
    }

    #[test]
    fn two_sided() {
        let t = g(3, &[(0, 1, &[0, 1]), (1, 0, &[-1]), (1, 2, &[6, -2]), (2, 1, &[0])]);
        let i = compute_interval(&t).unwrap();
        assert_eq!((i.alpha.clone(), i.beta.clone()), (Ext::Finite(int(1)), Ext::Finite(int(3))));
        let b = brute_interval(&t).unwrap();
        assert_eq!((i.alpha, i.beta), (b.alpha, b.beta));
    }

    #[test]
    fn constant_negative_cycle() {
        let t = g(1, &[(0, 0, &[-1])]);
        assert!(matches!(
            compute_interval(&t),
            Err(FeasibilityError::NeverFeasible { .. })
        ));
        assert_eq!(brute_interval(&t), Err(OracleError::NeverFeasible));
    }

    #[test]
    fn crossing_constraints_are_never_feasible() {
        // x - 5 >= 0 and 1 - x >= 0 cannot both hold.
        let t = g(2, &[(0, 0, &[-5, 1]), (1, 1, &[1, -1])]);
        assert!(matches!(
            compute_interval(&t),
            Err(FeasibilityError::NeverFeasible { .. })
        ));
    }

    #[test]
    fn far_roots_are_found() {
        let t = g(2, &[(0, 1, &[-1000]), (1, 0, &[0, 1, 0])]);
        let i = compute_interval(&t).unwrap();
        assert_eq!(i.alpha, Ext::Finite(int(1000)));
        let t = g(1, &[(0, 0, &[-7, -3])]);
        let i = compute_interval(&t).unwrap();
        assert_eq!(i.beta, Ext::Finite(ratio(-7, 3)));
        assert_eq!(i.alpha, Ext::NegInf);
    }

    #[test]
    fn rejects_nonlinear() {
        let t = g(1, &[(0, 0, &[1, 0, 1])]);
        assert_eq!(compute_interval(&t), Err(FeasibilityError::NotLinear { degree: 2 }));
    }
}
