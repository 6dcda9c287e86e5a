//! Linear vertex potentials that make every edge nonnegative over a whole
//! interval of parameter values at once.

use num::Zero;
use thiserror::Error;

use crate::graph::{bellman_ford_virtual_source, EdgeId, ParametricGraph, VertexId};
use crate::poly::{Ext, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReweightError {
    #[error("negative cycle {cycle:?} at interval endpoint {at}")]
    NegativeCycleAtEndpoint { at: Rational, cycle: Vec<EdgeId> },
    #[error("slope graph has negative cycle {cycle:?}; the interval does not extend to infinity")]
    SlopeGraphNegativeCycle { cycle: Vec<EdgeId> },
    #[error("interval endpoints out of order: {lo} > {hi}")]
    InvalidInterval { lo: Rational, hi: Rational },
    #[error("edge weights must be linear, found degree {degree}")]
    NotLinear { degree: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    PlusInfinity,
    MinusInfinity,
}

/// One linear function per vertex, valid on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPotential {
    pub funcs: Vec<Poly>,
    pub lo: Ext,
    pub hi: Ext,
}

impl VertexPotential {
    pub fn covers(&self, r: &Rational) -> bool {
        let r = Ext::Finite(r.clone());
        self.lo <= r && r <= self.hi
    }

    pub fn at(&self, v: VertexId, r: &Rational) -> Rational {
        self.funcs[v].evaluate(r)
    }

    pub fn values_at(&self, r: &Rational) -> Vec<Rational> {
        self.funcs.iter().map(|f| f.evaluate(r)).collect()
    }

    /// `W_e(r) + g_u(r) - g_v(r)` for every edge, in edge-id order.
    pub fn reweighted(&self, g: &ParametricGraph, r: &Rational) -> Vec<Rational> {
        let h = self.values_at(r);
        g.edges()
            .iter()
            .map(|e| e.weight.evaluate(r) + &h[e.src] - &h[e.dst])
            .collect()
    }
}

fn check_linear(g: &ParametricGraph) -> Result<(), ReweightError> {
    if g.is_linear() {
        Ok(())
    } else {
        Err(ReweightError::NotLinear {
            degree: g.degree_bound(),
        })
    }
}

fn potentials_at(g: &ParametricGraph, r: &Rational) -> Result<Vec<Rational>, ReweightError> {
    bellman_ford_virtual_source(&g.instantiate(r)).map_err(|c| ReweightError::NegativeCycleAtEndpoint {
        at: r.clone(),
        cycle: c.0,
    })
}

/// Each vertex gets the line through its endpoint potentials; a point
/// interval gets the constant potentials.
pub fn potentials_finite(
    g: &ParametricGraph,
    alpha: &Rational,
    beta: &Rational,
) -> Result<VertexPotential, ReweightError> {
    check_linear(g)?;
    if alpha > beta {
        return Err(ReweightError::InvalidInterval {
            lo: alpha.clone(),
            hi: beta.clone(),
        });
    }
    let ha = potentials_at(g, alpha)?;
    let funcs = if alpha == beta {
        ha.into_iter().map(Poly::constant).collect()
    } else {
        let hb = potentials_at(g, beta)?;
        let width = beta - alpha;
        ha.into_iter()
            .zip(hb)
            .map(|(a, b)| {
                let slope = (b - &a) / &width;
                Poly::linear(a - &slope * alpha, slope)
            })
            .collect()
    };
    Ok(VertexPotential {
        funcs,
        lo: Ext::Finite(alpha.clone()),
        hi: Ext::Finite(beta.clone()),
    })
}

/// Potentials at `alpha` extended along slope-graph potentials toward one
/// infinity. Toward minus infinity the slopes are negated and `x` reflected.
pub fn potentials_half_infinite(
    g: &ParametricGraph,
    alpha: &Rational,
    direction: Direction,
) -> Result<VertexPotential, ReweightError> {
    check_linear(g)?;
    let ha = potentials_at(g, alpha)?;
    let minus = direction == Direction::MinusInfinity;
    let hinf = bellman_ford_virtual_source(&g.slope_graph(minus))
        .map_err(|c| ReweightError::SlopeGraphNegativeCycle { cycle: c.0 })?;
    let funcs = ha
        .into_iter()
        .zip(hinf)
        .map(|(a, s)| {
            // plus:  a + (x - alpha) s;  minus: a + (alpha - x) s
            let slope = if minus { -s } else { s };
            Poly::linear(a - &slope * alpha, slope)
        })
        .collect();
    let (lo, hi) = if minus {
        (Ext::NegInf, Ext::Finite(alpha.clone()))
    } else {
        (Ext::Finite(alpha.clone()), Ext::PosInf)
    };
    Ok(VertexPotential { funcs, lo, hi })
}

/// Families for `(-inf, 0]` and `[0, +inf)`, in that order.
pub fn potentials_doubly_infinite(
    g: &ParametricGraph,
) -> Result<(VertexPotential, VertexPotential), ReweightError> {
    let zero = Rational::zero();
    Ok((
        potentials_half_infinite(g, &zero, Direction::MinusInfinity)?,
        potentials_half_infinite(g, &zero, Direction::PlusInfinity)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, ratio};

    fn g(n: usize, edges: &[(usize, usize, &[i64])]) -> ParametricGraph {
        ParametricGraph::from_edges(n, edges.iter().map(|&(s, d, c)| (s, d, Poly::from_ints(c))))
            .unwrap()
    }

    #[test]
    fn finite_line_joining() {
        let t = g(2, &[(0, 1, &[-1, 1])]);
        let p = potentials_finite(&t, &int(0), &int(2)).unwrap();
        assert_eq!(p.funcs[0], Poly::zero());
        assert_eq!(p.funcs[1], Poly::linear(int(-1), ratio(1, 2)));
        for r in [int(0), int(1), int(2), ratio(1, 3)] {
            let w = p.reweighted(&t, &r);
            assert_eq!(w[0], &r / int(2));
        }
    }

    #[test]
    fn nonnegative_constants_need_no_shift() {
        let t = g(3, &[(0, 1, &[2]), (1, 2, &[0]), (2, 0, &[5])]);
        let p = potentials_finite(&t, &int(-1), &int(4)).unwrap();
        assert!(p.funcs.iter().all(Poly::is_zero));
    }

    #[test]
    fn point_interval_is_constant() {
        let t = g(2, &[(0, 1, &[0, 1]), (1, 0, &[-1])]);
        let p = potentials_finite(&t, &int(1), &int(1)).unwrap();
        assert!(p.funcs.iter().all(Poly::is_constant));
        assert!(p.reweighted(&t, &int(1)).iter().all(|w| *w >= int(0)));
    }

    #[test]
    fn half_infinite_examples() {
        let t = g(2, &[(0, 1, &[-1, 1])]);
        let p = potentials_half_infinite(&t, &int(1), Direction::PlusInfinity).unwrap();
        assert!(p.funcs.iter().all(Poly::is_zero));
        assert_eq!((p.lo.clone(), p.hi.clone()), (Ext::Finite(int(1)), Ext::PosInf));

        let c = g(2, &[(0, 1, &[4]), (1, 0, &[-3])]);
        let p = potentials_half_infinite(&c, &int(7), Direction::MinusInfinity).unwrap();
        assert_eq!(p.funcs[0], Poly::constant(int(-3)));
        assert_eq!(p.funcs[1], Poly::zero());
    }

    #[test]
    fn falling_cycle_rejects_plus_infinity() {
        let t = g(2, &[(0, 1, &[0, -1]), (1, 0, &[10])]);
        assert!(matches!(
            potentials_half_infinite(&t, &int(0), Direction::PlusInfinity),
            Err(ReweightError::SlopeGraphNegativeCycle { .. })
        ));
    }

    #[test]
    fn mirror_rejects_rising_cycle_and_split_covers_line() {
        let t = g(3, &[(0, 1, &[1, -2]), (1, 2, &[0, 3]), (2, 0, &[5, 0])]);
        // cycle weight 6 + x: feasible on [-6, inf)
        let p = potentials_half_infinite(&t, &int(4), Direction::MinusInfinity);
        assert!(p.is_err());
        let p = potentials_finite(&t, &int(-6), &int(4)).unwrap();
        for r in [int(-6), int(-1), int(4)] {
            assert!(p.reweighted(&t, &r).iter().all(|w| *w >= int(0)));
        }
        let acyclic = g(3, &[(0, 1, &[1, -2]), (1, 2, &[0, 3])]);
        let (m, pl) = potentials_doubly_infinite(&acyclic).unwrap();
        for r in [int(-1000), int(-1), int(0)] {
            assert!(m.reweighted(&acyclic, &r).iter().all(|w| *w >= int(0)));
        }
        for r in [int(0), int(3), int(99999)] {
            assert!(pl.reweighted(&acyclic, &r).iter().all(|w| *w >= int(0)));
        }
    }

    #[test]
    fn single_edge_x_doubly_infinite() {
        let t = g(2, &[(0, 1, &[0, 1])]);
        let (_, plus) = potentials_doubly_infinite(&t).unwrap();
        assert!(plus.funcs.iter().all(Poly::is_zero));
        let empty = ParametricGraph::new(3);
        let (a, b) = potentials_doubly_infinite(&empty).unwrap();
        assert!(a.funcs.iter().chain(&b.funcs).all(Poly::is_zero));
    }
}
