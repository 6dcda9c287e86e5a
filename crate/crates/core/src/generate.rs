//! Random graphs for tests, benches and the command line. Every generator is
//! driven by the caller's RNG, so a seeded RNG gives a reproducible graph.

use num::Zero;
use rand::Rng;

use crate::graph::ParametricGraph;
use crate::poly::{Poly, Rational};

/// Numerator in `[-9, 9]`, denominator in `[1, 4]`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into())
}

pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, degree: usize) -> Poly {
    Poly::new((0..=degree).map(|_| small_rational(rng)).collect())
}

/// `m` edges between uniform endpoints (loops and parallel edges included),
/// each weight a random polynomial of the given degree.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, degree: usize) -> ParametricGraph {
    let mut g = ParametricGraph::new(n);
    if n == 0 {
        return g;
    }
    for _ in 0..m {
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        g.add_edge(u, v, random_poly(rng, degree)).expect("endpoints in range");
    }
    g
}

/// A linear graph with no negative cycle anywhere on `[lo, hi]`, but with
/// plenty of negative edges.
///
/// Each vertex gets a hidden potential `p`, each edge a slope `b` with
/// `|b| <= max_slope` and a slack `s >= 0`; the intercept is chosen so that
/// `w(x) + p_u - p_v >= s` on the whole interval. The first `n - 1` edges form
/// a random tree hanging from vertex 0, so everything is reachable from it.
pub fn feasible_linear_graph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    m: usize,
    lo: &Rational,
    hi: &Rational,
    max_slope: &Rational,
) -> ParametricGraph {
    let mut g = ParametricGraph::new(n);
    if n == 0 {
        return g;
    }
    let potentials: Vec<Rational> = (0..n).map(|_| small_rational(rng) * Rational::from_integer(3.into())).collect();
    for i in 0..m {
        let (u, v) = if i + 1 < n {
            (rng.gen_range(0..=i), i + 1)
        } else {
            (rng.gen_range(0..n), rng.gen_range(0..n))
        };
        let b = max_slope * Rational::new(rng.gen_range(-4..=4).into(), 4.into());
        let slack = Rational::new(rng.gen_range(0..=8).into(), 2.into());
        let low = std::cmp::min(&b * lo, &b * hi);
        let a = &potentials[v] - &potentials[u] + slack - low;
        let w = if b.is_zero() { Poly::constant(a) } else { Poly::linear(a, b) };
        g.add_edge(u, v, w).expect("endpoints in range");
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bellman_ford_virtual_source;
    use crate::poly::{int, ratio};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn feasible_graphs_have_no_negative_cycle_on_the_interval() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = feasible_linear_graph(&mut rng, 15, 60, &int(0), &int(1), &int(1));
            for r in [int(0), ratio(1, 3), int(1)] {
                assert!(bellman_ford_virtual_source(&g.instantiate(&r)).is_ok());
            }
            assert!(g.edges().iter().all(|e| e.weight.slope() <= int(1) && e.weight.slope() >= int(-1)));
        }
    }

    #[test]
    fn same_seed_same_graph() {
        let a = random_graph(&mut ChaCha8Rng::seed_from_u64(9), 6, 20, 2);
        let b = random_graph(&mut ChaCha8Rng::seed_from_u64(9), 6, 20, 2);
        assert_eq!(a, b);
        assert!(a.degree_bound() <= 2);
    }
}
