use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    derive_constants, CrudeTable, HubTrees, RefinedTable, SurplusAdvice, SurplusError,
    SurplusParams, NO_HUB,
};
use crate::graph::{
    bellman_ford_virtual_source, dijkstra_by, expand_factors, hop_limited_apsp_by, Adjacency,
    EdgeId, ParametricGraph, VertexId,
};
use crate::poly::{rational_to_f64, Poly, Rational};
use crate::reweight::potentials_finite;

pub fn preprocess_surplus(g: &ParametricGraph, params: &SurplusParams) -> Result<SurplusAdvice, SurplusError> {
    let SurplusParams {
        epsilon,
        alpha,
        beta,
        ..
    } = params;
    if !g.is_linear() {
        return Err(SurplusError::NotLinear {
            degree: g.degree_bound(),
        });
    }
    if alpha >= beta {
        return Err(SurplusError::EmptyInterval {
            alpha: alpha.clone(),
            beta: beta.clone(),
        });
    }
    if !epsilon.is_positive() {
        return Err(SurplusError::NonPositiveEpsilon(epsilon.clone()));
    }
    let mut max_slope = Rational::zero();
    for (edge, e) in g.edges().iter().enumerate() {
        let slope = e.weight.slope().abs();
        if let Some(gamma) = &params.gamma {
            if slope > *gamma {
                return Err(SurplusError::SlopeBoundExceeded {
                    edge,
                    slope,
                    gamma: gamma.clone(),
                });
            }
        }
        max_slope = max_slope.max(slope);
    }
    for at in [alpha, beta] {
        if let Err(c) = bellman_ford_virtual_source(&g.instantiate(at)) {
            return Err(SurplusError::NegativeCycleInInterval {
                at: at.clone(),
                cycle: c.0,
            });
        }
    }

    let n = g.n();
    let constants = derive_constants(n, alpha, beta, epsilon, &max_slope, &params.overrides);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut hubs: Vec<VertexId> = if n == 0 {
        Vec::new()
    } else {
        (0..constants.hub_draws).map(|_| rng.gen_range(0..n)).collect()
    };
    hubs.sort_unstable();
    hubs.dedup();

    if !params.overrides.any() {
        let (n_, h) = (n as u128, hubs.len() as u128);
        let entries = (constants.n0 as u128 + 1) * n_ * n_
            + (constants.n1 as u128 + 1) * (2 * h * n_ + n_ * n_);
        if entries > params.budget {
            return Err(SurplusError::GridTooLarge {
                entries,
                budget: params.budget,
            });
        }
    }

    let potentials = potentials_finite(g, alpha, beta).expect("both endpoints were checked");
    let fwd = Adjacency::build(n, g.edges().iter().map(|e| (e.src, e.dst)), false);
    let rev = Adjacency::build(n, g.edges().iter().map(|e| (e.src, e.dst)), true);
    let hop = constants.hop_limit.min(n.max(1));

    let crude = (0..=constants.n0)
        .into_par_iter()
        .map(|i| {
            let r = alpha + &constants.rho0 * Rational::from_integer(i.into());
            crude_table(g, &r, hop)
        })
        .collect();

    let refined = (0..=constants.n1)
        .into_par_iter()
        .map(|j| {
            let r = alpha + &constants.rho1 * Rational::from_integer(j.into());
            let h: Vec<f64> = potentials.values_at(&r).iter().map(rational_to_f64).collect();
            let weights: Vec<f64> = g
                .edges()
                .iter()
                .map(|e| {
                    let w = e.weight.evaluate(&r) + potentials.at(e.src, &r) - potentials.at(e.dst, &r);
                    rational_to_f64(&w).max(0.0)
                })
                .collect();
            refined_table(g, &hubs, &fwd, &rev, &weights, &h)
        })
        .collect();

    Ok(SurplusAdvice {
        n,
        alpha: alpha.clone(),
        beta: beta.clone(),
        epsilon: epsilon.clone(),
        seed: params.seed,
        constants,
        hubs,
        crude,
        refined,
        graph_hash: g.content_hash(),
    })
}

fn crude_table(g: &ParametricGraph, r: &Rational, hop: usize) -> CrudeTable {
    let n = g.n();
    let apsp = hop_limited_apsp_by(
        n,
        g.edges().iter().map(|e| (e.src, e.dst, rational_to_f64(&e.weight.evaluate(r)))),
        hop,
    );
    let (dist, factors, root) = apsp.into_parts();
    let f = dist
        .iter()
        .enumerate()
        .map(|(uv, d)| {
            d.as_ref()?;
            let mut path = Vec::new();
            expand_factors(&factors, n, root, uv / n, uv % n, &mut path);
            Some(g.path_weight(&path))
        })
        .collect();
    CrudeTable { f, factors, root }
}

// Exact weight functions along a parent forest, memoized from the root out.
// `toward` gives the vertex one step closer to the root across edge e.
fn tree_functions(
    g: &ParametricGraph,
    root: VertexId,
    parent: &[Option<EdgeId>],
    toward: impl Fn(EdgeId) -> VertexId,
) -> Vec<Option<Poly>> {
    let n = g.n();
    let mut f: Vec<Option<Poly>> = vec![None; n];
    f[root] = Some(Poly::zero());
    for v in 0..n {
        let mut chain = Vec::new();
        let mut x = v;
        while f[x].is_none() {
            let Some(e) = parent[x] else { break };
            chain.push((x, e));
            x = toward(e);
        }
        let Some(mut acc) = f[x].clone() else { continue };
        for (y, e) in chain.into_iter().rev() {
            acc = &acc + &g.edge(e).weight;
            f[y] = Some(acc.clone());
        }
    }
    f
}

fn refined_table(
    g: &ParametricGraph,
    hubs: &[VertexId],
    fwd: &Adjacency,
    rev: &Adjacency,
    weights: &[f64],
    h: &[f64],
) -> RefinedTable {
    let n = g.n();
    let mut trees = Vec::with_capacity(hubs.len());
    // Real distances to and from each hub, for choosing the best hub.
    let mut to_hub = Vec::with_capacity(hubs.len());
    let mut from_hub = Vec::with_capacity(hubs.len());
    for &hub in hubs {
        let (dout, out_parent) = dijkstra_by(n, fwd, weights, hub);
        let (din, in_parent) = dijkstra_by(n, rev, weights, hub);
        let out_f = tree_functions(g, hub, &out_parent, |e| g.edge(e).src);
        let in_f = tree_functions(g, hub, &in_parent, |e| g.edge(e).dst);
        from_hub.push(
            dout.iter()
                .enumerate()
                .map(|(v, d)| d.map(|d| d - h[hub] + h[v]))
                .collect::<Vec<_>>(),
        );
        to_hub.push(
            din.iter()
                .enumerate()
                .map(|(v, d)| d.map(|d| d - h[v] + h[hub]))
                .collect::<Vec<_>>(),
        );
        trees.push(HubTrees {
            out_f,
            out_parent,
            in_f,
            in_parent,
        });
    }
    let mut best = vec![NO_HUB; n * n];
    for u in 0..n {
        for v in 0..n {
            let mut top: Option<(f64, u32)> = None;
            for k in 0..hubs.len() {
                if let (Some(a), Some(b)) = (to_hub[k][u], from_hub[k][v]) {
                    if top.is_none_or(|(t, _)| a + b < t) {
                        top = Some((a + b, k as u32));
                    }
                }
            }
            if let Some((_, k)) = top {
                best[u * n + v] = k;
            }
        }
    }
    RefinedTable { trees, best }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bellman_ford;
    use crate::poly::{int, ratio, Ext};
    use crate::surplus::{Overrides, SurplusPath};

    fn g(n: usize, edges: &[(usize, usize, &[i64])]) -> ParametricGraph {
        ParametricGraph::from_edges(n, edges.iter().map(|&(s, d, c)| (s, d, Poly::from_ints(c))))
            .unwrap()
    }

    fn params(seed: u64) -> SurplusParams {
        SurplusParams::new(int(0), int(1), ratio(1, 5), seed)
    }

    #[test]
    fn one_vertex_is_trivial() {
        let a = preprocess_surplus(&ParametricGraph::new(1), &params(1)).unwrap();
        assert_eq!(a.query(0, 0, &ratio(1, 3)).unwrap().value, Ext::zero());
    }

    #[test]
    fn single_edge_is_exact() {
        let t = g(2, &[(0, 1, &[0, 1])]);
        let a = preprocess_surplus(&t, &SurplusParams::new(int(0), int(1), int(1), 3)).unwrap();
        assert_eq!(a.constants.n0, 8);
        let ans = a.query(0, 1, &ratio(1, 2)).unwrap();
        assert_eq!(ans.value, Ext::Finite(ratio(1, 2)));
        assert_eq!(a.materialize(&t, 0, 1, ans.path), Some(vec![0]));
        assert_eq!(a.query(1, 0, &ratio(1, 2)).unwrap().value, Ext::PosInf);
        assert_eq!(a.query(1, 0, &ratio(1, 2)).unwrap().path, SurplusPath::None);
    }

    #[test]
    fn negative_cycle_at_beta_is_rejected() {
        let t = g(2, &[(0, 1, &[0, -2]), (1, 0, &[1])]);
        assert!(matches!(
            preprocess_surplus(&t, &params(0)),
            Err(SurplusError::NegativeCycleInInterval { .. })
        ));
    }

    #[test]
    fn out_of_interval_and_bad_params() {
        let t = g(2, &[(0, 1, &[0, 1])]);
        let a = preprocess_surplus(&t, &params(0)).unwrap();
        assert!(matches!(a.query(0, 1, &int(2)), Err(SurplusError::OutOfInterval { .. })));
        let mut p = params(0);
        p.gamma = Some(ratio(1, 2));
        assert!(matches!(preprocess_surplus(&t, &p), Err(SurplusError::SlopeBoundExceeded { .. })));
        let p = SurplusParams::new(int(1), int(1), int(1), 0);
        assert!(matches!(preprocess_surplus(&t, &p), Err(SurplusError::EmptyInterval { .. })));
        let mut p = params(0);
        p.budget = 10;
        assert!(matches!(preprocess_surplus(&t, &p), Err(SurplusError::GridTooLarge { .. })));
    }

    #[test]
    fn grid_points_with_short_paths_are_exact() {
        let t = g(4, &[(0, 1, &[1, -1]), (1, 2, &[0, 1]), (0, 2, &[2, 0]), (2, 3, &[-1, 1]), (3, 0, &[3, 0])]);
        let a = preprocess_surplus(&t, &params(5)).unwrap();
        for i in 0..=a.constants.n0 {
            let r = a.crude_grid_point(i);
            let bf = bellman_ford(&t.instantiate(&r), 0).unwrap();
            for v in 0..4 {
                assert_eq!(a.query(0, v, &r).unwrap().value, bf.dist[v]);
            }
        }
    }

    #[test]
    fn answers_are_real_paths_and_never_too_small() {
        let t = g(5, &[
            (0, 1, &[1, -1]), (1, 2, &[0, 1]), (2, 3, &[1, 0]), (3, 4, &[0, -1]),
            (4, 0, &[2, 1]), (0, 3, &[3, 0]), (1, 4, &[1, 1]),
        ]);
        let mut p = params(9);
        p.overrides = Overrides { n0: Some(4), n1: Some(8), hop_limit: Some(2), hubs: Some(2) };
        let a = preprocess_surplus(&t, &p).unwrap();
        for k in 0..=20 {
            let r = ratio(k, 20);
            let inst = t.instantiate(&r);
            for u in 0..5 {
                let bf = bellman_ford(&inst, u).unwrap();
                for v in 0..5 {
                    let ans = a.query(u, v, &r).unwrap();
                    assert!(ans.value >= bf.dist[v]);
                    assert!(ans.touched <= 8);
                    if let Some(path) = a.materialize(&t, u, v, ans.path) {
                        assert_eq!(Ext::Finite(t.path_weight(&path).evaluate(&r)), ans.value);
                    }
                }
            }
        }
    }

    #[test]
    fn same_seed_same_advice() {
        let t = g(4, &[(0, 1, &[1, -1]), (1, 2, &[0, 1]), (2, 3, &[1, 0]), (3, 0, &[2, 0])]);
        let a = preprocess_surplus(&t, &params(42)).unwrap();
        let b = preprocess_surplus(&t, &params(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crude_drift_stays_under_half_epsilon() {
        let t = g(6, &[
            (0, 1, &[1, 1]), (1, 2, &[0, -1]), (2, 3, &[1, 1]), (3, 4, &[2, -1]), (4, 5, &[0, 1]),
        ]);
        let a = preprocess_surplus(&t, &params(0)).unwrap();
        let c = &a.constants;
        let half_eps = &a.epsilon / int(2);
        for k in 0..=40 {
            let r = ratio(k, 40);
            let i = super::super::nearest(&r, &a.alpha, &c.rho0, c.n0);
            let ri = a.crude_grid_point(i);
            for f in a.crude[i].f.iter().flatten() {
                assert!((f.evaluate(&r) - f.evaluate(&ri)).abs() <= half_eps);
            }
        }
    }
}
