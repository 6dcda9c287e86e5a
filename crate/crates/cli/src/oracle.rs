use std::path::PathBuf;

use clap::Args;
use psp_core::oracle::{brute_interval, BruteForce, OracleError};
use psp_core::{Rational, VertexId};

use crate::query::{check_vertex, pair_queries, result_line, show_path};
use crate::{codes, load_graph, rational, Failure};

#[derive(Args)]
pub struct OracleArgs {
    #[arg(short, long)]
    input: PathBuf,
    /// Print the feasible interval from cycle enumeration instead of distances.
    #[arg(long)]
    interval: bool,
    #[arg(long)]
    source: Option<VertexId>,
    #[arg(long)]
    target: Option<VertexId>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    x: Option<Rational>,
    #[arg(long)]
    pairs: Option<PathBuf>,
    #[arg(long)]
    emit_path: bool,
}

fn failure(e: OracleError) -> Failure {
    let code = match e {
        OracleError::BoundExceeded { .. } => codes::BUDGET,
        OracleError::NeverFeasible => codes::NEGATIVE_CYCLE,
        OracleError::NotLinear { .. } => codes::INPUT,
    };
    Failure::new(code, e)
}

pub fn run(a: OracleArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input)?;
    if a.interval {
        let iv = brute_interval(&g).map_err(failure)?;
        println!("alpha={}", iv.alpha);
        println!("beta={}", iv.beta);
        println!("interval=({},{})", iv.alpha, iv.beta);
        return Ok(());
    }
    let brute = BruteForce::new(&g).map_err(failure)?;
    let queries = match (a.source, a.target, &a.x, &a.pairs) {
        // Same shape as a linear-advice query: every target from one source.
        (Some(s), None, Some(x), None) => {
            check_vertex(s, g.n())?;
            (0..g.n()).map(|v| (s, v, x.clone())).collect()
        }
        _ => pair_queries(&a.pairs, a.source, a.target, &a.x, g.n())?,
    };
    let mut out = String::new();
    for (u, v, x) in queries {
        let value = brute.distance(u, v, &x);
        let path = a.emit_path.then(|| show_path(&g, u, value.is_finite().then(|| brute.best_path(u, v, &x)).flatten()));
        result_line(&mut out, u, v, &x, &value, path);
    }
    print!("{out}");
    Ok(())
}
