use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use psp_core::graph::parse_pwg;
use psp_core::poly::parse_rational;
use psp_core::Rational;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn psp(args: &[&str]) -> Run {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_psp"))
        .args(args)
        .output()
        .expect("psp runs");
    Run {
        code: status.code().expect("exited normally"),
        out: String::from_utf8(stdout).unwrap(),
        err: String::from_utf8(stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let r = psp(args);
    assert_eq!(r.code, 0, "psp {args:?} failed: {}", r.err);
    r.out
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn value(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key}= in {out}"))
        .to_string()
}

// 0 -> 1 -> 2 plus 0 -> 2; weights change sign with x but there is no cycle.
const DAG: &str = "3 3 1\n0 1 1 -2\n1 2 -1 1\n0 2 3 0\n";

// Cycle 0 -> 1 -> 0 of weight 2x - 1, feasible for x >= 1/2.
const CYCLE: &str = "3 3 1\n0 1 0 1\n1 0 -1 1\n1 2 2 -1\n";

const NEGATIVE: &str = "2 2 0\n0 1 -1\n1 0 -1\n";

#[test]
fn dag_has_unbounded_interval() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", DAG);
    let adv = dir.path().join("g.adv");
    let out = ok(&["preprocess", "--kind", "linear", "-i", s(&g), "-o", s(&adv)]);
    assert_eq!(value(&out, "interval"), "(-inf,+inf)");
    assert!(fs::read_to_string(&adv).unwrap().starts_with("PSP-ADVICE v1 kind=linear"));
}

#[test]
fn constant_negative_cycle_exits_3() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", NEGATIVE);
    let out = dir.path().join("g.adv");
    let r = psp(&["preprocess", "--kind", "linear", "-i", s(&g), "-o", s(&out)]);
    assert_eq!(r.code, 3, "{}", r.err);
}

#[test]
fn parse_error_exits_2() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", "2 1 1\n0 7 1\n");
    let out = dir.path().join("g.adv");
    assert_eq!(psp(&["preprocess", "--kind", "linear", "-i", s(&g), "-o", s(&out)]).code, 2);
    let g = file(&dir, "h.pwg", "not a graph\n");
    assert_eq!(psp(&["preprocess", "--kind", "minbase", "-i", s(&g), "-o", s(&out)]).code, 2);
}

#[test]
fn surplus_advice_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", CYCLE);
    let build = |name: &str| {
        let out = dir.path().join(name);
        ok(&[
            "preprocess", "--kind", "surplus", "-i", s(&g), "-o", s(&out), "--alpha", "1", "--beta", "2",
            "--epsilon", "0.2", "--seed", "7",
        ]);
        fs::read(out).unwrap()
    };
    assert_eq!(build("a.adv"), build("b.adv"));
}

#[test]
fn surplus_outside_interval_exits_6() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", CYCLE);
    let adv = dir.path().join("g.adv");
    ok(&[
        "preprocess", "--kind", "surplus", "-i", s(&g), "-o", s(&adv), "--alpha", "1", "--beta", "2", "--epsilon",
        "0.5",
    ]);
    let q = |x: &str| psp(&["query", "-a", s(&adv), "-i", s(&g), "--source", "0", "--target", "2", "--x", x]);
    assert_eq!(q("3/2").code, 0);
    assert_eq!(q("3").code, 6);
}

#[test]
fn surplus_grid_budget_exits_4() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", CYCLE);
    let adv = dir.path().join("g.adv");
    let r = psp(&[
        "preprocess", "--kind", "surplus", "-i", s(&g), "-o", s(&adv), "--alpha", "1", "--beta", "2", "--epsilon",
        "1/100000000",
    ]);
    assert_eq!(r.code, 4, "{}", r.err);
}

#[test]
fn negative_cycle_inside_surplus_interval_exits_3() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", CYCLE);
    let adv = dir.path().join("g.adv");
    let r = psp(&[
        "preprocess", "--kind", "surplus", "-i", s(&g), "-o", s(&adv), "--alpha", "0", "--beta", "1", "--epsilon",
        "0.5",
    ]);
    assert_eq!(r.code, 3, "{}", r.err);
}

#[test]
fn hash_mismatch_exits_5() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", DAG);
    let other = file(&dir, "h.pwg", "3 3 1\n0 1 1 -2\n1 2 -1 1\n0 2 4 0\n");
    let adv = dir.path().join("g.adv");
    ok(&["preprocess", "--kind", "linear", "-i", s(&g), "-o", s(&adv)]);
    let r = psp(&["query", "-a", s(&adv), "-i", s(&other), "--source", "0", "--x", "1"]);
    assert_eq!(r.code, 5, "{}", r.err);
}

#[test]
fn linear_query_matches_oracle() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", CYCLE);
    let adv = dir.path().join("g.adv");
    ok(&["preprocess", "--kind", "linear", "-i", s(&g), "-o", s(&adv)]);
    for x in ["1/2", "3/4", "2", "100"] {
        for src in ["0", "1", "2"] {
            let got = ok(&["query", "-a", s(&adv), "-i", s(&g), "--source", src, "--x", x]);
            let want = ok(&["oracle", "-i", s(&g), "--source", src, "--x", x]);
            assert_eq!(got, want, "source {src} x {x}");
            assert_eq!(got.lines().count(), 3);
        }
    }
}

#[test]
fn linear_query_outside_interval_is_minus_infinity() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", CYCLE);
    let adv = dir.path().join("g.adv");
    ok(&["preprocess", "--kind", "linear", "-i", s(&g), "-o", s(&adv)]);
    let out = ok(&["query", "-a", s(&adv), "-i", s(&g), "--source", "0", "--x", "0"]);
    for line in out.lines() {
        assert_eq!(line.split_whitespace().nth(3), Some("-inf"), "{line}");
    }
}

#[test]
fn minbase_paths_re_sum_to_their_values() {
    let dir = TempDir::new().unwrap();
    let text = "4 6 2\n0 1 1 -1 1\n1 2 0 2\n2 3 -1 0 1\n0 3 5 -1\n3 1 2 1\n2 0 4 0 0\n";
    let g = file(&dir, "g.pwg", text);
    let graph = parse_pwg(text).unwrap();
    let adv = dir.path().join("g.adv");
    ok(&["preprocess", "--kind", "minbase", "-i", s(&g), "-o", s(&adv)]);
    let mut pairs = String::new();
    for x in ["-1", "0", "1/3", "2"] {
        for u in 0..4 {
            for v in 0..4 {
                pairs.push_str(&format!("{u} {v} {x}\n"));
            }
        }
    }
    let pf = file(&dir, "pairs.txt", &pairs);
    let out = ok(&["query", "-a", s(&adv), "-i", s(&g), "--pairs", s(&pf), "--emit-path"]);
    let oracle = ok(&["oracle", "-i", s(&g), "--pairs", s(&pf)]);
    let mut finite = 0;
    for (line, want) in out.lines().zip(oracle.lines()) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(toks[..4], want.split_whitespace().collect::<Vec<_>>()[..4], "{line}");
        let [_, _, x, value, path] = toks[..] else { panic!("bad line {line}") };
        if matches!(value, "+inf" | "-inf") {
            continue;
        }
        let x: Rational = parse_rational(x).unwrap();
        let verts: Vec<usize> = path.split(',').map(|t| t.parse().unwrap()).collect();
        // The cheapest parallel edge is the one a shortest path would use.
        let total: Rational = verts
            .windows(2)
            .map(|w| {
                graph
                    .edges()
                    .iter()
                    .filter(|e| e.src == w[0] && e.dst == w[1])
                    .map(|e| e.weight.evaluate(&x))
                    .min()
                    .expect("consecutive vertices are joined by an edge")
            })
            .sum();
        assert_eq!(total, parse_rational(value).unwrap(), "{line}");
        finite += 1;
    }
    assert_eq!(out.lines().count(), 64);
    assert!(finite > 0);
}

#[test]
fn bench_with_no_trials_reports_nothing_measured() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.pwg", DAG);
    let out = ok(&["bench", "-i", s(&g), "--trials", "0"]);
    assert_eq!(value(&out, "trials"), "0");
    assert!(!out.contains("speedup"));
}

#[test]
fn bench_trials_depend_only_on_the_seed() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("g.pwg");
    ok(&["generate", "--n", "30", "--m", "90", "--feasible", "--seed", "3", "-o", s(&g)]);
    let trials = |seed: &str| -> Vec<String> {
        ok(&["bench", "-i", s(&g), "--trials", "5", "--seed", seed, "--show-trials"])
            .lines()
            .filter(|l| l.starts_with("trial") && !l.starts_with("trials="))
            .map(str::to_string)
            .collect()
    };
    let first = trials("11");
    assert_eq!(first.len(), 5);
    assert_eq!(first, trials("11"));
    assert_ne!(first, trials("12"));
    let out = ok(&["bench", "-i", s(&g), "--trials", "3"]);
    assert!(value(&out, "speedup").parse::<f64>().unwrap() > 0.0);
}

#[test]
fn generated_graphs_are_reproducible() {
    let a = ok(&["generate", "--n", "6", "--m", "12", "--degree", "2", "--seed", "5"]);
    assert_eq!(a, ok(&["generate", "--n", "6", "--m", "12", "--degree", "2", "--seed", "5"]));
    let g = parse_pwg(&a).unwrap();
    assert_eq!((g.n(), g.edge_count()), (6, 12));
}
