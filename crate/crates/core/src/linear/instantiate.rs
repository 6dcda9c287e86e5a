//! The query side. Only the reweighted Dijkstra lives here.
//!
//! Reweighted edge weights are affine in `x`, so after multiplying through by
//! a common denominator `D` each one is `A_e + B_e x` with integer `A_e, B_e`.
//! At `x = p/q` the weight scaled by `D q` is the integer `A_e q + B_e p`, and
//! Dijkstra runs over machine integers whenever nothing can overflow.

use num::{BigInt, Integer, One, Signed, ToPrimitive};

use crate::graph::{dijkstra_by, Adjacency, ParametricGraph, ShortestPathResult, VertexId};
use crate::poly::{Ext, Poly, Rational};
use crate::reweight::VertexPotential;

use super::{LinearAdvice, LinearError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SsspOutcome {
    Distances(ShortestPathResult),
    /// `x` lies outside the feasible interval.
    MinusInfinity,
}

/// Per-advice tables built on first use.
#[derive(Clone)]
pub(crate) struct Prepared {
    adj: Adjacency,
    /// `None` for a family with a nonlinear function.
    families: Vec<Option<Scaled>>,
}

// Integer lines for one potential family, all scaled by `scale`.
#[derive(Clone)]
struct Scaled {
    scale: BigInt,
    edge: Lines<BigInt>,
    vertex: Lines<BigInt>,
    small: Option<(i64, Lines<i64>, Lines<i64>)>,
}

#[derive(Clone)]
struct Lines<T> {
    constant: Vec<T>,
    slope: Vec<T>,
}

impl<T> Lines<T> {
    fn try_map<U>(&self, f: impl Fn(&T) -> Option<U>) -> Option<Lines<U>> {
        Some(Lines {
            constant: self.constant.iter().map(&f).collect::<Option<_>>()?,
            slope: self.slope.iter().map(&f).collect::<Option<_>>()?,
        })
    }
}

fn coeffs(p: &Poly) -> Option<(Rational, Rational)> {
    (p.degree() <= 1).then(|| (p.intercept(), p.slope()))
}

fn scaled(g: &ParametricGraph, fam: &VertexPotential) -> Option<Scaled> {
    let vertex: Vec<(Rational, Rational)> = fam.funcs.iter().map(coeffs).collect::<Option<_>>()?;
    let edge: Vec<(Rational, Rational)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = coeffs(&e.weight)?;
            let (cu, du) = &vertex[e.src];
            let (cv, dv) = &vertex[e.dst];
            Some((a + cu - cv, b + du - dv))
        })
        .collect::<Option<_>>()?;
    let scale = edge
        .iter()
        .chain(&vertex)
        .flat_map(|(a, b)| [a.denom(), b.denom()])
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let lift = |pairs: &[(Rational, Rational)]| {
        let up = |x: &Rational| (x * Rational::from_integer(scale.clone())).to_integer();
        Lines {
            constant: pairs.iter().map(|(a, _)| up(a)).collect(),
            slope: pairs.iter().map(|(_, b)| up(b)).collect(),
        }
    };
    let (edge, vertex) = (lift(&edge), lift(&vertex));
    let small = (|| Some((scale.to_i64()?, edge.try_map(BigInt::to_i64)?, vertex.try_map(BigInt::to_i64)?)))();
    Some(Scaled {
        scale,
        edge,
        vertex,
        small,
    })
}

impl Prepared {
    fn build(advice: &LinearAdvice, g: &ParametricGraph) -> Prepared {
        Prepared {
            adj: Adjacency::build(g.n(), g.edges().iter().map(|e| (e.src, e.dst)), false),
            families: advice.families.iter().map(|f| scaled(g, f)).collect(),
        }
    }
}

/// Advice bound to its graph.
#[derive(Clone)]
pub struct LinearInstance<'a> {
    advice: &'a LinearAdvice,
    g: &'a ParametricGraph,
    prepared: &'a Prepared,
}

impl<'a> LinearInstance<'a> {
    pub fn new(advice: &'a LinearAdvice, g: &'a ParametricGraph) -> Result<Self, LinearError> {
        let found = g.content_hash();
        if found != advice.graph_hash {
            return Err(LinearError::AdviceMismatch {
                expected: advice.graph_hash.clone(),
                found,
            });
        }
        let prepared = advice.prepared.get_or_init(|| Prepared::build(advice, g));
        Ok(LinearInstance { advice, g, prepared })
    }

    pub fn sssp(&self, source: VertexId, r: &Rational) -> SsspOutcome {
        assert!(source < self.g.n(), "source {source} out of range");
        if !self.advice.interval.contains(r) {
            return SsspOutcome::MinusInfinity;
        }
        // With two families both cover 0; the later one is preferred there.
        let (k, family) = self
            .advice
            .families
            .iter()
            .enumerate()
            .rev()
            .find(|(_, f)| f.covers(r))
            .expect("potential families cover the feasible interval");
        let (dist, parent) = match &self.prepared.families[k] {
            Some(s) => self.integer_run(s, source, r),
            None => self.rational_run(family, source, r),
        };
        SsspOutcome::Distances(ShortestPathResult {
            source,
            dist,
            parent,
        })
    }

    fn rational_run(&self, family: &VertexPotential, source: VertexId, r: &Rational) -> Run {
        let h = family.values_at(r);
        let weights: Vec<Rational> = self
            .g
            .edges()
            .iter()
            .map(|e| e.weight.evaluate(r) + &h[e.src] - &h[e.dst])
            .collect();
        let (dist, parent) = dijkstra_by(self.g.n(), &self.prepared.adj, &weights, source);
        let dist = dist
            .into_iter()
            .zip(&h)
            .map(|(d, hv)| Ext::from(d.map(|d| d - &h[source] + hv)))
            .collect();
        (dist, parent)
    }

    fn integer_run(&self, s: &Scaled, source: VertexId, r: &Rational) -> Run {
        let (p, q) = (r.numer(), r.denom());
        if let Some(run) = self.machine_run(s, source, p, q) {
            return run;
        }
        let at = |l: &Lines<BigInt>, i: usize| &l.constant[i] * q + &l.slope[i] * p;
        let weights: Vec<BigInt> = (0..self.g.edge_count()).map(|e| at(&s.edge, e)).collect();
        let (dist, parent) = dijkstra_by(self.g.n(), &self.prepared.adj, &weights, source);
        let shift = at(&s.vertex, source);
        let denom = &s.scale * q;
        let dist = dist
            .into_iter()
            .enumerate()
            .map(|(v, d)| Ext::from(d.map(|d| Rational::new(d - &shift + at(&s.vertex, v), denom.clone()))))
            .collect();
        (dist, parent)
    }

    // `None` when some intermediate value might not fit in an i128.
    fn machine_run(&self, s: &Scaled, source: VertexId, p: &BigInt, q: &BigInt) -> Option<Run> {
        let (scale, edge, vertex) = s.small.as_ref()?;
        let (p, q) = (p.to_i64()? as i128, q.to_i64()? as i128);
        let at = |l: &Lines<i64>, i: usize| (l.constant[i] as i128 * q).checked_add(l.slope[i] as i128 * p);
        let weights: Vec<i128> = (0..self.g.edge_count()).map(|e| at(edge, e)).collect::<Option<_>>()?;
        // Reduced weights are nonnegative, so every distance is at most their sum.
        weights.iter().try_fold(0i128, |acc, w| acc.checked_add(*w))?;
        debug_assert!(weights.iter().all(|w| !w.is_negative()));
        let shift = at(vertex, source)?;
        let denom = BigInt::from(*scale as i128 * q);
        let (dist, parent) = dijkstra_by(self.g.n(), &self.prepared.adj, &weights, source);
        let dist = dist
            .into_iter()
            .enumerate()
            .map(|(v, d)| match d {
                None => Some(Ext::PosInf),
                Some(d) => {
                    let num = BigInt::from(d) - shift + at(vertex, v)?;
                    Some(Ext::Finite(Rational::new(num, denom.clone())))
                }
            })
            .collect::<Option<_>>()?;
        Some((dist, parent))
    }
}

type Run = (Vec<Ext>, Vec<Option<crate::graph::EdgeId>>);

pub fn instantiate_sssp(
    advice: &LinearAdvice,
    g: &ParametricGraph,
    source: VertexId,
    r: &Rational,
) -> Result<SsspOutcome, LinearError> {
    Ok(LinearInstance::new(advice, g)?.sssp(source, r))
}
