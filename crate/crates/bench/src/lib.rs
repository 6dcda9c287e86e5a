//! Seeded fixtures for the criterion benches.

use psp_core::generate::{feasible_linear_graph, random_graph};
use psp_core::minbase::{preprocess_minbase, MinbaseAdvice, OracleConfig};
use psp_core::{preprocess_linear, Ext, LinearAdvice, ParametricGraph, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct LinearFixture {
    pub graph: ParametricGraph,
    pub advice: LinearAdvice,
    /// Query points inside the feasible interval.
    pub points: Vec<Rational>,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn points(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational, count: usize) -> Vec<Rational> {
    let den = 1 << 16;
    (0..count)
        .map(|_| lo + (hi - lo) * Rational::new(rng.gen_range(0..=den).into(), den.into()))
        .collect()
}

/// A graph with no negative cycle on `[0, 1]`, plus its advice.
pub fn linear_fixture(n: usize, m: usize, seed: u64) -> LinearFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = feasible_linear_graph(&mut rng, n, m, &int(0), &int(1), &int(1));
    let advice = preprocess_linear(&graph).expect("generated graphs are feasible on [0, 1]");
    let (lo, hi) = match (&advice.interval.alpha, &advice.interval.beta) {
        (Ext::Finite(a), Ext::Finite(b)) => (a.clone(), b.clone()),
        _ => (int(0), int(1)),
    };
    let points = points(&mut rng, &lo, &hi, 64);
    LinearFixture { graph, advice, points }
}

pub struct MinbaseFixture {
    pub graph: ParametricGraph,
    pub advice: MinbaseAdvice,
    pub points: Vec<Rational>,
}

/// A small random graph of the given weight degree, plus its pair oracle.
pub fn minbase_fixture(n: usize, m: usize, degree: usize, seed: u64) -> MinbaseFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = random_graph(&mut rng, n, m, degree);
    let advice = preprocess_minbase(&graph, &OracleConfig::default()).expect("small graphs stay under the piece cap");
    let points = points(&mut rng, &int(-4), &int(4), 64);
    MinbaseFixture { graph, advice, points }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_reproducible() {
        let (a, b) = (linear_fixture(20, 60, 4), linear_fixture(20, 60, 4));
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.points, b.points);
        assert!(a.points.iter().all(|r| a.advice.interval.contains(r)));
        assert_eq!(minbase_fixture(4, 8, 2, 1).points.len(), 64);
    }
}
