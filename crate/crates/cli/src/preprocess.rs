use std::path::PathBuf;

use clap::Args;
use psp_core::advice::{write_advice, Advice};
use psp_core::feasibility::FeasibilityError;
use psp_core::linear::LinearError;
use psp_core::minbase::{preprocess_minbase, MinBaseError, OracleConfig};
use psp_core::poly::default_tolerance;
use psp_core::reweight::ReweightError;
use psp_core::surplus::{preprocess_surplus, Overrides, SurplusError, SurplusParams};
use psp_core::{preprocess_linear, Rational};

use crate::{codes, load_graph, rational, write_text, Failure, Kind, RangeArgs};

#[derive(Args)]
pub struct PreprocessArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[command(flatten)]
    range: RangeArgs,
    /// Root-bracketing tolerance for minbase breaks.
    #[arg(long, value_parser = rational)]
    tol: Option<Rational>,
    /// Largest total piece count a minbase build may reach.
    #[arg(long)]
    piece_cap: Option<usize>,
    /// Bound on edge slopes, checked before a surplus build.
    #[arg(long, value_parser = rational)]
    gamma: Option<Rational>,
    #[arg(long)]
    override_n0: Option<usize>,
    #[arg(long)]
    override_n1: Option<usize>,
    #[arg(long)]
    override_hoplimit: Option<usize>,
    #[arg(long)]
    override_hubs: Option<usize>,
}

fn linear_failure(e: LinearError) -> Failure {
    let code = match &e {
        LinearError::Feasibility(FeasibilityError::NeverFeasible { .. })
        | LinearError::Reweight(ReweightError::NegativeCycleAtEndpoint { .. } | ReweightError::SlopeGraphNegativeCycle { .. }) => {
            codes::NEGATIVE_CYCLE
        }
        LinearError::Feasibility(FeasibilityError::NotLinear { .. }) | LinearError::Reweight(ReweightError::NotLinear { .. }) => {
            codes::INPUT
        }
        _ => codes::OTHER,
    };
    Failure::new(code, e)
}

fn surplus_failure(e: SurplusError) -> Failure {
    let code = match &e {
        SurplusError::NegativeCycleInInterval { .. } => codes::NEGATIVE_CYCLE,
        SurplusError::GridTooLarge { .. } => codes::BUDGET,
        _ => codes::INPUT,
    };
    Failure::new(code, e)
}

fn minbase_failure(e: MinBaseError) -> Failure {
    let code = match &e {
        MinBaseError::SizeBudgetExceeded { .. } => codes::BUDGET,
        _ => codes::OTHER,
    };
    Failure::new(code, e)
}

pub fn run(a: PreprocessArgs) -> Result<(), Failure> {
    let g = load_graph(&a.input)?;
    let mut summary = vec![
        ("kind".to_string(), format!("{:?}", a.kind).to_lowercase()),
        ("n".into(), g.n().to_string()),
        ("m".into(), g.edge_count().to_string()),
    ];
    let advice = match a.kind {
        Kind::Linear => {
            let adv = preprocess_linear(&g).map_err(linear_failure)?;
            summary.push(("alpha".into(), adv.interval.alpha.to_string()));
            summary.push(("beta".into(), adv.interval.beta.to_string()));
            summary.push(("interval".into(), format!("({},{})", adv.interval.alpha, adv.interval.beta)));
            summary.push(("families".into(), adv.families.len().to_string()));
            Advice::Linear(adv)
        }
        Kind::Minbase => {
            let mut config = OracleConfig {
                tol: a.tol.unwrap_or_else(default_tolerance),
                ..OracleConfig::default()
            };
            if let Some(cap) = a.piece_cap {
                config.piece_cap = cap;
            }
            config.domain = match (&a.range.alpha, &a.range.beta) {
                (Some(lo), Some(hi)) if lo <= hi => Some((lo.clone(), hi.clone())),
                (Some(_), Some(_)) => return Err(Failure::input("need --alpha <= --beta")),
                (None, None) => None,
                _ => return Err(Failure::input("give both --alpha and --beta, or neither")),
            };
            let adv = preprocess_minbase(&g, &config).map_err(minbase_failure)?;
            let o = &adv.oracle;
            summary.push(("level".into(), o.level().to_string()));
            summary.push(("max_breaks".into(), o.max_size().to_string()));
            summary.push(("total_pieces".into(), o.total_pieces().to_string()));
            Advice::Minbase(adv)
        }
        Kind::Surplus => {
            let need = |x: &Option<Rational>, flag: &str| {
                x.clone().ok_or_else(|| Failure::input(format!("surplus advice needs --{flag}")))
            };
            let mut params = SurplusParams::new(
                need(&a.range.alpha, "alpha")?,
                need(&a.range.beta, "beta")?,
                need(&a.range.epsilon, "epsilon")?,
                a.range.seed,
            );
            params.gamma = a.gamma.clone();
            params.overrides = Overrides {
                n0: a.override_n0,
                n1: a.override_n1,
                hop_limit: a.override_hoplimit,
                hubs: a.override_hubs,
            };
            let adv = preprocess_surplus(&g, &params).map_err(surplus_failure)?;
            let c = &adv.constants;
            for (k, v) in [
                ("alpha", adv.alpha.to_string()),
                ("beta", adv.beta.to_string()),
                ("epsilon", adv.epsilon.to_string()),
                ("seed", adv.seed.to_string()),
                ("k", c.k.to_string()),
                ("n0", c.n0.to_string()),
                ("n1", c.n1.to_string()),
                ("rho0", c.rho0.to_string()),
                ("rho1", c.rho1.to_string()),
                ("hop_limit", c.hop_limit.to_string()),
                ("hubs", adv.hubs.len().to_string()),
            ] {
                summary.push((k.into(), v));
            }
            Advice::Surplus(adv)
        }
    };
    let text = write_advice(&advice);
    write_text(&a.output, &text)?;
    summary.push(("hash".into(), advice.graph_hash().to_string()));
    summary.push(("bytes".into(), text.len().to_string()));
    for (k, v) in summary {
        println!("{k}={v}");
    }
    Ok(())
}
