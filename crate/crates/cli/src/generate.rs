use std::path::PathBuf;

use clap::Args;
use psp_core::generate::{feasible_linear_graph, random_graph};
use psp_core::graph::write_pwg;
use psp_core::Rational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{rational, write_text, Failure};

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    degree: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Linear weights with no negative cycle on [--alpha, --beta].
    #[arg(long)]
    feasible: bool,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "0")]
    alpha: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true, default_value = "1")]
    beta: Rational,
    #[arg(long, value_parser = rational, default_value = "1")]
    max_slope: Rational,
    /// Defaults to standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn run(a: GenerateArgs) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let g = if a.feasible {
        if a.alpha > a.beta {
            return Err(Failure::input("need --alpha <= --beta"));
        }
        feasible_linear_graph(&mut rng, a.n, a.m, &a.alpha, &a.beta, &a.max_slope)
    } else {
        random_graph(&mut rng, a.n, a.m, a.degree)
    };
    let text = write_pwg(&g);
    match &a.output {
        Some(p) => write_text(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
