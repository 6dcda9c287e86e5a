use std::path::PathBuf;
use std::hint::black_box;
use std::time::{Duration, Instant};

use clap::Args;
use psp_core::graph::{bellman_ford, bellman_ford_walk_distances};
use psp_core::linear::LinearInstance;
use psp_core::linear::LinearAdvice;
use psp_core::minbase::{preprocess_minbase, MinbaseAdvice, OracleConfig};
use psp_core::surplus::{preprocess_surplus, SurplusAdvice, SurplusParams};
use psp_core::{preprocess_linear, Ext, Rational, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::query::check_vertex;
use crate::{codes, load_graph, Failure, Kind, RangeArgs};

#[derive(Args)]
pub struct BenchArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "linear")]
    kind: Kind,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long, default_value_t = 0)]
    source: VertexId,
    /// Also print the sampled `x` of every trial.
    #[arg(long)]
    show_trials: bool,
}

enum Prepared {
    Linear(LinearAdvice),
    Minbase(MinbaseAdvice),
    Surplus(SurplusAdvice),
}

// Bounds for sampling x: the given range, else a window around the finite end.
fn window(lo: &Ext, hi: &Ext) -> (Rational, Rational) {
    let ten = Rational::from_integer(10.into());
    match (lo, hi) {
        (Ext::Finite(a), Ext::Finite(b)) => (a.clone(), b.clone()),
        (Ext::Finite(a), _) => (a.clone(), a + &ten),
        (_, Ext::Finite(b)) => (b - &ten, b.clone()),
        _ => (-ten.clone(), ten),
    }
}

fn sample(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    let den: i64 = 1 << 20;
    lo + (hi - lo) * Rational::new(rng.gen_range(0..=den).into(), den.into())
}

fn mean_micros(total: Duration, trials: usize) -> f64 {
    1e6 * total.as_secs_f64() / trials as f64
}

pub fn run(a: BenchArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input)?;
    println!("kind={}", format!("{:?}", a.kind).to_lowercase());
    println!("trials={}", a.trials);
    if a.trials == 0 {
        return Ok(());
    }
    check_vertex(a.source, g.n())?;
    let n = g.n();
    let given = (
        a.range.alpha.clone().map_or(Ext::NegInf, Ext::Finite),
        a.range.beta.clone().map_or(Ext::PosInf, Ext::Finite),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(a.range.seed);
    let start = Instant::now();
    let prepared = match a.kind {
        Kind::Linear => Prepared::Linear(preprocess_linear(&g).map_err(|e| Failure::new(codes::NEGATIVE_CYCLE, e))?),
        Kind::Minbase => Prepared::Minbase(
            preprocess_minbase(&g, &OracleConfig::default()).map_err(|e| Failure::new(codes::BUDGET, e))?,
        ),
        Kind::Surplus => {
            let (Some(alpha), Some(beta), Some(eps)) = (&a.range.alpha, &a.range.beta, &a.range.epsilon) else {
                return Err(Failure::input("surplus bench needs --alpha --beta --epsilon"));
            };
            let params = SurplusParams::new(alpha.clone(), beta.clone(), eps.clone(), a.range.seed);
            Prepared::Surplus(preprocess_surplus(&g, &params).map_err(|e| Failure::new(codes::OTHER, e))?)
        }
    };
    let linear = match &prepared {
        Prepared::Linear(adv) => Some(LinearInstance::new(adv, &g).map_err(|e| Failure::new(codes::OTHER, e))?),
        _ => None,
    };
    let preprocess = start.elapsed();
    let (lo, hi) = match &prepared {
        Prepared::Linear(adv) => window(&adv.interval.alpha, &adv.interval.beta),
        Prepared::Surplus(adv) => (adv.alpha.clone(), adv.beta.clone()),
        Prepared::Minbase(_) => window(&given.0, &given.1),
    };

    let s = a.source;
    let (mut t_fast, mut t_slow) = (Duration::ZERO, Duration::ZERO);
    for i in 0..a.trials {
        let x = sample(&mut rng, &lo, &hi);
        if a.show_trials {
            println!("trial{i}={x}");
        }
        let t = Instant::now();
        match (&prepared, &linear) {
            (_, Some(inst)) => drop(black_box(inst.sssp(s, &x))),
            (Prepared::Minbase(adv), _) => (0..n).for_each(|v| drop(black_box(adv.oracle.query(s, v, &x)))),
            (Prepared::Surplus(adv), _) => (0..n).for_each(|v| drop(black_box(adv.query(s, v, &x)))),
            (Prepared::Linear(_), None) => unreachable!("instance built above"),
        }
        t_fast += t.elapsed();
        let t = Instant::now();
        let inst = g.instantiate(&x);
        if a.kind == Kind::Minbase {
            black_box(bellman_ford_walk_distances(&inst, s));
        } else {
            drop(black_box(bellman_ford(&inst, s)));
        }
        t_slow += t.elapsed();
    }
    let (fast_us, slow_us) = (mean_micros(t_fast, a.trials), mean_micros(t_slow, a.trials));
    println!("n={n}");
    println!("m={}", g.edge_count());
    println!("seed={}", a.range.seed);
    println!("x_lo={lo}");
    println!("x_hi={hi}");
    println!("preprocess_ms={:.3}", 1e3 * preprocess.as_secs_f64());
    println!("mean_instantiate_us={fast_us:.3}");
    println!("mean_bellman_ford_us={slow_us:.3}");
    println!("speedup={:.3}", slow_us / fast_us);
    Ok(())
}
