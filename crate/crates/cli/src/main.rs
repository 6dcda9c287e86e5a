//! `psp`: build advice for a parametric graph, then answer instantiated
//! shortest-path queries from it.
//!
//! Exit codes: 2 for unreadable input, 3 when the graph has a negative cycle
//! where it must not, 4 when a size budget is exceeded, 5 when the advice was
//! built for a different graph, 6 when `x` is outside the advice's range.

#![allow(clippy::large_enum_variant)]

mod bench;
mod generate;
mod oracle;
mod preprocess;
mod query;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use psp_core::advice::AdviceKind;
use psp_core::graph::parse_pwg;
use psp_core::poly::parse_rational;
use psp_core::{ParametricGraph, Rational};

#[derive(Parser)]
#[command(name = "psp", version, about = "Parametric shortest paths: preprocess once, query many times")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build advice for a graph and write it to a file.
    Preprocess(preprocess::PreprocessArgs),
    /// Answer queries from an advice file.
    Query(query::QueryArgs),
    /// Brute-force reference answers (small graphs only).
    Oracle(oracle::OracleArgs),
    /// Time instantiation against Bellman-Ford from scratch.
    Bench(bench::BenchArgs),
    /// Write a random graph.
    Generate(generate::GenerateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Linear,
    Minbase,
    Surplus,
}

impl From<Kind> for AdviceKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Linear => AdviceKind::Linear,
            Kind::Minbase => AdviceKind::Minbase,
            Kind::Surplus => AdviceKind::Surplus,
        }
    }
}

/// Interval and approximation flags shared by several subcommands.
#[derive(Args, Clone, Debug, Default)]
pub struct RangeArgs {
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub beta: Option<Rational>,
    #[arg(long, value_parser = rational)]
    pub epsilon: Option<Rational>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn new(code: u8, msg: impl ToString) -> Self {
        Failure {
            code,
            msg: msg.to_string(),
        }
    }

    pub fn input(msg: impl ToString) -> Self {
        Failure::new(codes::INPUT, msg)
    }
}

pub mod codes {
    pub const OTHER: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const NEGATIVE_CYCLE: u8 = 3;
    pub const BUDGET: u8 = 4;
    pub const MISMATCH: u8 = 5;
    pub const OUT_OF_RANGE: u8 = 6;
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<ParametricGraph, Failure> {
    parse_pwg(&read_text(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::new(codes::OTHER, format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Preprocess(a) => preprocess::run(a),
        Command::Query(a) => query::run(a),
        Command::Oracle(a) => oracle::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Generate(a) => generate::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
