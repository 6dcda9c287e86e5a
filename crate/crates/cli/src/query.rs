use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use psp_core::advice::{parse_advice, Advice};
use psp_core::linear::LinearInstance;
use psp_core::minbase::MinBaseError;
use psp_core::surplus::SurplusError;
use psp_core::{EdgeId, Ext, ParametricGraph, Rational, SsspOutcome, VertexId};

use crate::{codes, load_graph, rational, read_text, Failure};

#[derive(Args)]
pub struct QueryArgs {
    #[arg(short, long)]
    advice: PathBuf,
    /// The graph the advice was built from.
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    source: Option<VertexId>,
    #[arg(long)]
    target: Option<VertexId>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    x: Option<Rational>,
    /// File of `u v x` lines.
    #[arg(long)]
    pairs: Option<PathBuf>,
    /// Append the vertex list of each path.
    #[arg(long)]
    emit_path: bool,
}

/// Pair queries from a file: `u v x` per line, `#` comments.
pub fn read_pairs(path: &Path, n: usize) -> Result<Vec<(VertexId, VertexId, Rational)>, Failure> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |what: &str| Failure::input(format!("{}:{}: {what}", path.display(), i + 1));
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v, x] = toks[..] else {
            return Err(bad("expected `u v x`"));
        };
        let (u, v) = match (u.parse(), v.parse()) {
            (Ok(u), Ok(v)) => (u, v),
            _ => return Err(bad("bad vertex")),
        };
        check_vertex(u, n)?;
        check_vertex(v, n)?;
        out.push((u, v, rational(x).map_err(|e| bad(&e))?));
    }
    Ok(out)
}

pub fn check_vertex(v: VertexId, n: usize) -> Result<(), Failure> {
    if v < n {
        Ok(())
    } else {
        Err(Failure::input(format!("vertex {v} out of range for {n} vertices")))
    }
}

/// Queries from `--pairs`, or the single `--source --target --x` triple.
pub fn pair_queries(
    pairs: &Option<PathBuf>,
    source: Option<VertexId>,
    target: Option<VertexId>,
    x: &Option<Rational>,
    n: usize,
) -> Result<Vec<(VertexId, VertexId, Rational)>, Failure> {
    match (pairs, source, target, x) {
        (Some(p), None, None, None) => read_pairs(p, n),
        (None, Some(u), Some(v), Some(x)) => {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            Ok(vec![(u, v, x.clone())])
        }
        _ => Err(Failure::input("give --pairs, or all of --source --target --x")),
    }
}

pub fn show_path(g: &ParametricGraph, start: VertexId, edges: Option<Vec<EdgeId>>) -> String {
    match edges {
        Some(p) => {
            let vs: Vec<String> = g.path_vertices(start, &p).iter().map(ToString::to_string).collect();
            vs.join(",")
        }
        None => "-".to_string(),
    }
}

pub fn result_line(out: &mut String, u: VertexId, v: VertexId, x: &Rational, value: &Ext, path: Option<String>) {
    write!(out, "{u} {v} {x} {value}").expect("writing to a String");
    if let Some(p) = path {
        write!(out, " {p}").expect("writing to a String");
    }
    out.push('\n');
}

pub fn run(a: QueryArgs) -> Result<(), Failure> {
    let advice = parse_advice(&read_text(&a.advice)?).map_err(|e| Failure::input(format!("{}: {e}", a.advice.display())))?;
    let g = load_graph(&a.input)?;
    let hash = g.content_hash();
    if hash != advice.graph_hash() {
        return Err(Failure::new(
            codes::MISMATCH,
            format!("advice was built for graph {}, but {} hashes to {hash}", advice.graph_hash(), a.input.display()),
        ));
    }
    let n = g.n();
    let mut out = String::new();
    match &advice {
        Advice::Linear(adv) => {
            let (Some(s), Some(x), None, None) = (a.source, &a.x, a.target, &a.pairs) else {
                return Err(Failure::input("linear advice answers --source --x queries"));
            };
            check_vertex(s, n)?;
            let inst = LinearInstance::new(adv, &g).map_err(|e| Failure::new(codes::MISMATCH, e))?;
            match inst.sssp(s, x) {
                SsspOutcome::MinusInfinity => {
                    for v in 0..n {
                        result_line(&mut out, s, v, x, &Ext::NegInf, a.emit_path.then(|| "-".to_string()));
                    }
                }
                SsspOutcome::Distances(d) => {
                    for v in 0..n {
                        let path = a.emit_path.then(|| show_path(&g, s, d.path_to(v, g.edges())));
                        result_line(&mut out, s, v, x, &d.dist[v], path);
                    }
                }
            }
        }
        Advice::Minbase(adv) => {
            for (u, v, x) in pair_queries(&a.pairs, a.source, a.target, &a.x, n)? {
                let ans = adv.oracle.query(u, v, &x).map_err(|e| match e {
                    MinBaseError::OutOfDomain { .. } => Failure::new(codes::OUT_OF_RANGE, e),
                    _ => Failure::new(codes::OTHER, e),
                })?;
                let path = a.emit_path.then(|| {
                    let edges = ans.tag.as_ref().filter(|_| ans.value.is_finite()).map(|t| t.edges());
                    show_path(&g, u, edges)
                });
                result_line(&mut out, u, v, &x, &ans.value, path);
            }
        }
        Advice::Surplus(adv) => {
            for (u, v, x) in pair_queries(&a.pairs, a.source, a.target, &a.x, n)? {
                let ans = adv.query(u, v, &x).map_err(|e| match e {
                    SurplusError::OutOfInterval { .. } => Failure::new(codes::OUT_OF_RANGE, e),
                    _ => Failure::new(codes::OTHER, e),
                })?;
                let path = a.emit_path.then(|| show_path(&g, u, adv.materialize(&g, u, v, ans.path)));
                result_line(&mut out, u, v, &x, &ans.value, path);
            }
        }
    }
    print!("{out}");
    Ok(())
}
