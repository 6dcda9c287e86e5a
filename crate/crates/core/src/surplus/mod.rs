//! Randomized all-pairs answers within an additive `epsilon` over a fixed
//! interval `[alpha, beta]`, for linear weights.
//!
//! Two kinds of advice are combined. The crude part stores hop-limited
//! all-pairs paths at a coarse grid of parameter values; the refined part
//! stores shortest-path trees into and out of a few random hub vertices at a
//! fine grid, plus the best hub per pair. A query picks the nearest grid point
//! of each kind and evaluates the stored paths' exact linear weights at `x`,
//! so every answer is the true length of a real path.

mod build;

use num::One;
use thiserror::Error;

use crate::graph::{EdgeId, MinPlusFactor, ParametricGraph, VertexId};
use crate::poly::{rational_to_f64, Ext, Poly, Rational};

pub use build::preprocess_surplus;

/// Marks a missing hub in the minimizer tables.
pub const NO_HUB: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurplusError {
    #[error("edge weights must be linear, found degree {degree}")]
    NotLinear { degree: usize },
    #[error("need alpha < beta, got [{alpha}, {beta}]")]
    EmptyInterval { alpha: Rational, beta: Rational },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),
    #[error("edge {edge} has slope {slope}, beyond the bound {gamma}")]
    SlopeBoundExceeded { edge: EdgeId, slope: Rational, gamma: Rational },
    #[error("negative cycle {cycle:?} at x = {at}")]
    NegativeCycleInInterval { at: Rational, cycle: Vec<EdgeId> },
    #[error("grids need {entries} table entries, over the budget of {budget}; pass overrides to shrink them")]
    GridTooLarge { entries: u128, budget: u128 },
    #[error("x = {r} is outside [{alpha}, {beta}]")]
    OutOfInterval { r: Rational, alpha: Rational, beta: Rational },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub n0: Option<usize>,
    pub n1: Option<usize>,
    pub hop_limit: Option<usize>,
    pub hubs: Option<usize>,
}

impl Overrides {
    pub fn any(&self) -> bool {
        self.n0.is_some() || self.n1.is_some() || self.hop_limit.is_some() || self.hubs.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurplusParams {
    pub epsilon: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    /// Optional bound on every edge slope, checked on input.
    pub gamma: Option<Rational>,
    pub seed: u64,
    pub overrides: Overrides,
    /// Ceiling on stored table entries when no override is given.
    pub budget: u128,
}

impl SurplusParams {
    pub fn new(alpha: Rational, beta: Rational, epsilon: Rational, seed: u64) -> Self {
        SurplusParams {
            epsilon,
            alpha,
            beta,
            gamma: None,
            seed,
            overrides: Overrides::default(),
            budget: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub k: Rational,
    pub n0: usize,
    pub n1: usize,
    pub rho0: Rational,
    pub rho1: Rational,
    /// Most vertices on a crude path.
    pub hop_limit: usize,
    /// Hub draws, before duplicates are dropped.
    pub hub_draws: usize,
}

/// `K = 8 (beta - alpha) max|slope|`, `N0 = ceil(K sqrt(n) ln n / eps)`,
/// `N1 = ceil(K n / eps)`, `hop = ceil(4 sqrt(n) ln n)`, `ceil(sqrt(n))` hub
/// draws. Each count is at least 1; overrides win.
pub fn derive_constants(
    n: usize,
    alpha: &Rational,
    beta: &Rational,
    epsilon: &Rational,
    max_slope: &Rational,
    overrides: &Overrides,
) -> Constants {
    let width = beta - alpha;
    let k = Rational::from_integer(8.into()) * &width * max_slope;
    let (kf, ef, nf) = (rational_to_f64(&k), rational_to_f64(epsilon), n as f64);
    let sqrt_ln = nf.sqrt() * nf.max(1.0).ln();
    let at_least_one = |x: f64| (x.ceil() as usize).max(1);
    let n0 = overrides.n0.unwrap_or_else(|| at_least_one(kf * sqrt_ln / ef)).max(1);
    let n1 = overrides.n1.unwrap_or_else(|| at_least_one(kf * nf / ef)).max(1);
    let hop_limit = overrides.hop_limit.unwrap_or_else(|| at_least_one(4.0 * sqrt_ln)).max(1);
    let hub_draws = overrides.hubs.unwrap_or_else(|| at_least_one(nf.sqrt()));
    Constants {
        rho0: &width / Rational::from_integer(n0.into()),
        rho1: &width / Rational::from_integer(n1.into()),
        k,
        n0,
        n1,
        hop_limit,
        hub_draws,
    }
}

/// Hop-limited paths at one crude grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrudeTable {
    /// Exact weight function of the stored `u -> v` path, row-major.
    pub f: Vec<Option<Poly>>,
    pub factors: Vec<MinPlusFactor>,
    pub root: usize,
}

/// Shortest-path trees out of and into one hub at one refined grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HubTrees {
    /// `f*(h, v)` and the tree edge entering `v`.
    pub out_f: Vec<Option<Poly>>,
    pub out_parent: Vec<Option<EdgeId>>,
    /// `f*(v, h)` and the tree edge leaving `v`.
    pub in_f: Vec<Option<Poly>>,
    pub in_parent: Vec<Option<EdgeId>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedTable {
    /// One entry per hub, in `SurplusAdvice::hubs` order.
    pub trees: Vec<HubTrees>,
    /// Index into the hub list of the best hub per pair, or [`NO_HUB`].
    pub best: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurplusAdvice {
    pub n: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub epsilon: Rational,
    pub seed: u64,
    pub constants: Constants,
    /// Distinct hubs, ascending.
    pub hubs: Vec<VertexId>,
    pub crude: Vec<CrudeTable>,
    pub refined: Vec<RefinedTable>,
    pub graph_hash: String,
}

/// Which stored path produced an answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurplusPath {
    None,
    Crude { grid: usize },
    Hub { grid: usize, hub: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurplusAnswer {
    pub value: Ext,
    pub path: SurplusPath,
    /// Table entries read.
    pub touched: usize,
}

// Index of the grid point nearest to r; a tie goes to the lower index.
fn nearest(r: &Rational, alpha: &Rational, rho: &Rational, max: usize) -> usize {
    let t = (r - alpha) / rho;
    let half = Rational::new(One::one(), 2.into());
    let i = (t - half).ceil().to_integer();
    let i: i64 = i.try_into().unwrap_or(i64::MAX);
    i.clamp(0, max as i64) as usize
}

impl SurplusAdvice {
    pub fn crude_grid_point(&self, i: usize) -> Rational {
        &self.alpha + &self.constants.rho0 * Rational::from_integer(i.into())
    }

    pub fn refined_grid_point(&self, j: usize) -> Rational {
        &self.alpha + &self.constants.rho1 * Rational::from_integer(j.into())
    }

    pub fn query(&self, u: VertexId, v: VertexId, r: &Rational) -> Result<SurplusAnswer, SurplusError> {
        assert!(u < self.n && v < self.n, "vertex out of range");
        if *r < self.alpha || *r > self.beta {
            return Err(SurplusError::OutOfInterval {
                r: r.clone(),
                alpha: self.alpha.clone(),
                beta: self.beta.clone(),
            });
        }
        let n = self.n;
        let mut touched = 0;
        let i = nearest(r, &self.alpha, &self.constants.rho0, self.constants.n0);
        let j = nearest(r, &self.alpha, &self.constants.rho1, self.constants.n1);

        touched += 1;
        let w0 = match &self.crude[i].f[u * n + v] {
            Some(f) => Ext::Finite(f.evaluate(r)),
            None => Ext::PosInf,
        };

        let table = &self.refined[j];
        touched += 1;
        let best = table.best[u * n + v];
        let mut w1 = Ext::PosInf;
        if best != NO_HUB {
            let trees = &table.trees[best as usize];
            touched += 2;
            if let (Some(a), Some(b)) = (&trees.in_f[u], &trees.out_f[v]) {
                w1 = Ext::Finite(a.evaluate(r) + b.evaluate(r));
            }
        }

        let (value, path) = if w0 <= w1 {
            let path = if w0.is_finite() { SurplusPath::Crude { grid: i } } else { SurplusPath::None };
            (w0, path)
        } else {
            let hub = self.hubs[best as usize];
            (w1, SurplusPath::Hub { grid: j, hub })
        };
        Ok(SurplusAnswer { value, path, touched })
    }

    /// Edge ids of the path behind an answer.
    pub fn materialize(&self, g: &ParametricGraph, u: VertexId, v: VertexId, path: SurplusPath) -> Option<Vec<EdgeId>> {
        match path {
            SurplusPath::None => None,
            SurplusPath::Crude { grid } => {
                let t = &self.crude[grid];
                t.f[u * self.n + v].as_ref()?;
                let mut out = Vec::new();
                crate::graph::expand_factors(&t.factors, self.n, t.root, u, v, &mut out);
                Some(out)
            }
            SurplusPath::Hub { grid, hub } => {
                let k = self.hubs.binary_search(&hub).ok()?;
                let trees = &self.refined[grid].trees[k];
                let mut out = Vec::new();
                let mut x = u;
                while x != hub {
                    let e = trees.in_parent[x]?;
                    out.push(e);
                    x = g.edge(e).dst;
                }
                let mut back = Vec::new();
                let mut y = v;
                while y != hub {
                    let e = trees.out_parent[y]?;
                    back.push(e);
                    y = g.edge(e).src;
                }
                back.reverse();
                out.extend(back);
                Some(out)
            }
        }
    }
}
