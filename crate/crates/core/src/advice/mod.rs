//! Text serialization of preprocessing output.
//!
//! ```text
//! PSP-ADVICE v1 kind=<linear|minbase|surplus>
//! sizes key=value ...
//! <kind-specific body>
//! hash <hex sha-256 of the canonical graph>
//! ```
//!
//! Writing is canonical: parsing a written file and writing it again gives the
//! same bytes.

mod linear;
mod minbase;
mod surplus;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::linear::LinearAdvice;
use crate::minbase::MinbaseAdvice;
use crate::poly::{parse_rational, Ext, Poly, Rational};
use crate::surplus::SurplusAdvice;

pub const MAGIC: &str = "PSP-ADVICE";
pub const VERSION: &str = "v1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdviceError {
    #[error("not an advice file (missing `{MAGIC} {VERSION}` header)")]
    BadHeader,
    #[error("unknown advice kind {0:?}")]
    UnknownKind(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of file, expected {0}")]
    Truncated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdviceKind {
    Linear,
    Minbase,
    Surplus,
}

impl fmt::Display for AdviceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdviceKind::Linear => "linear",
            AdviceKind::Minbase => "minbase",
            AdviceKind::Surplus => "surplus",
        })
    }
}

impl FromStr for AdviceKind {
    type Err = AdviceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(AdviceKind::Linear),
            "minbase" => Ok(AdviceKind::Minbase),
            "surplus" => Ok(AdviceKind::Surplus),
            other => Err(AdviceError::UnknownKind(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Advice {
    Linear(LinearAdvice),
    Minbase(MinbaseAdvice),
    Surplus(SurplusAdvice),
}

impl Advice {
    pub fn kind(&self) -> AdviceKind {
        match self {
            Advice::Linear(_) => AdviceKind::Linear,
            Advice::Minbase(_) => AdviceKind::Minbase,
            Advice::Surplus(_) => AdviceKind::Surplus,
        }
    }

    pub fn graph_hash(&self) -> &str {
        match self {
            Advice::Linear(a) => &a.graph_hash,
            Advice::Minbase(a) => &a.graph_hash,
            Advice::Surplus(a) => &a.graph_hash,
        }
    }
}

pub fn write_advice(advice: &Advice) -> String {
    let mut w = Writer::default();
    w.line(format_args!("{MAGIC} {VERSION} kind={}", advice.kind()));
    match advice {
        Advice::Linear(a) => linear::write(&mut w, a),
        Advice::Minbase(a) => minbase::write(&mut w, a),
        Advice::Surplus(a) => surplus::write(&mut w, a),
    }
    w.line(format_args!("hash {}", advice.graph_hash()));
    w.out
}

pub fn parse_advice(text: &str) -> Result<Advice, AdviceError> {
    let mut r = Reader::new(text);
    let kind = read_header(&mut r)?;
    let advice = match kind {
        AdviceKind::Linear => Advice::Linear(linear::read(&mut r)?),
        AdviceKind::Minbase => Advice::Minbase(minbase::read(&mut r)?),
        AdviceKind::Surplus => Advice::Surplus(surplus::read(&mut r)?),
    };
    let (line, toks) = r.expect("hash")?;
    let [hash] = toks[..] else {
        return Err(syntax(line, "hash line takes one value"));
    };
    if let Some((line, _)) = r.next_line() {
        return Err(syntax(line, "trailing content after hash"));
    }
    Ok(with_hash(advice, hash.to_string()))
}

fn with_hash(mut advice: Advice, hash: String) -> Advice {
    match &mut advice {
        Advice::Linear(a) => a.graph_hash = hash,
        Advice::Minbase(a) => a.graph_hash = hash,
        Advice::Surplus(a) => a.graph_hash = hash,
    }
    advice
}

/// Reads only the header line.
pub fn peek_kind(text: &str) -> Result<AdviceKind, AdviceError> {
    read_header(&mut Reader::new(text))
}

fn read_header(r: &mut Reader<'_>) -> Result<AdviceKind, AdviceError> {
    let (_, toks) = r.next_line().ok_or(AdviceError::BadHeader)?;
    match toks[..] {
        [MAGIC, VERSION, kind] => kind
            .strip_prefix("kind=")
            .ok_or(AdviceError::BadHeader)?
            .parse(),
        _ => Err(AdviceError::BadHeader),
    }
}

#[derive(Default)]
pub(crate) struct Writer {
    out: String,
}

impl Writer {
    pub(crate) fn line(&mut self, args: fmt::Arguments<'_>) {
        self.out.write_fmt(args).expect("writing to a String");
        self.out.push('\n');
    }

    pub(crate) fn sizes(&mut self, pairs: &[(&str, usize)]) {
        let body: Vec<String> = pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        self.line(format_args!("sizes {}", body.join(" ")));
    }
}

pub(crate) struct Reader<'a> {
    lines: std::iter::Enumerate<std::str::Lines<'a>>,
}

pub(crate) type Line<'a> = (usize, Vec<&'a str>);

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        Reader {
            lines: text.lines().enumerate(),
        }
    }

    /// Next nonblank line as tokens.
    pub(crate) fn next_line(&mut self) -> Option<Line<'a>> {
        for (i, l) in self.lines.by_ref() {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }

    /// Next line, which must start with `tag`; returns the remaining tokens.
    pub(crate) fn expect(&mut self, tag: &str) -> Result<Line<'a>, AdviceError> {
        let (line, toks) = self
            .next_line()
            .ok_or_else(|| AdviceError::Truncated(format!("`{tag}` line")))?;
        if toks[0] != tag {
            return Err(syntax(line, format!("expected `{tag}`, found `{}`", toks[0])));
        }
        Ok((line, toks[1..].to_vec()))
    }

    pub(crate) fn sizes(&mut self, keys: &[&str]) -> Result<Vec<usize>, AdviceError> {
        let (line, toks) = self.expect("sizes")?;
        let map: BTreeMap<&str, &str> = toks.iter().filter_map(|t| t.split_once('=')).collect();
        keys.iter()
            .map(|k| {
                let v = map.get(k).ok_or_else(|| syntax(line, format!("sizes lacks `{k}`")))?;
                num(line, v)
            })
            .collect()
    }
}

pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> AdviceError {
    AdviceError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub(crate) fn num<T: FromStr>(line: usize, tok: &str) -> Result<T, AdviceError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("bad number {tok:?}")))
}

pub(crate) fn rat(line: usize, tok: &str) -> Result<Rational, AdviceError> {
    parse_rational(tok).map_err(|e| syntax(line, e.to_string()))
}

pub(crate) fn ext(line: usize, tok: &str) -> Result<Ext, AdviceError> {
    tok.parse().map_err(|_| syntax(line, format!("bad extended value {tok:?}")))
}

/// `-` for none, else coefficients.
pub(crate) fn opt_poly(line: usize, toks: &[&str]) -> Result<Option<Poly>, AdviceError> {
    match toks {
        ["-"] => Ok(None),
        [] => Err(syntax(line, "missing polynomial")),
        _ => poly(line, toks).map(Some),
    }
}

pub(crate) fn poly(line: usize, toks: &[&str]) -> Result<Poly, AdviceError> {
    Ok(Poly::new(toks.iter().map(|t| rat(line, t)).collect::<Result<_, _>>()?))
}

pub(crate) fn show_opt_poly(p: &Option<Poly>) -> String {
    p.as_ref().map_or_else(|| "-".to_string(), Poly::to_string)
}

pub(crate) fn show_opt<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

pub(crate) fn opt_num<T: FromStr>(line: usize, tok: &str) -> Result<Option<T>, AdviceError> {
    if tok == "-" {
        Ok(None)
    } else {
        num(line, tok).map(Some)
    }
}

pub(crate) fn exactly<const N: usize>(line: usize, toks: &[&str], what: &str) -> Result<[usize; N], AdviceError> {
    if toks.len() != N {
        return Err(syntax(line, format!("{what} takes {N} values")));
    }
    let mut out = [0; N];
    for (slot, t) in out.iter_mut().zip(toks) {
        *slot = num(line, t)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ParametricGraph;
    use crate::linear::preprocess_linear;
    use crate::minbase::{preprocess_minbase, OracleConfig};
    use crate::poly::{int, ratio};
    use crate::surplus::{preprocess_surplus, SurplusParams};

    fn graph() -> ParametricGraph {
        let mut g = ParametricGraph::new(4);
        g.add_edge(0, 1, Poly::from_ints(&[1, -1])).unwrap();
        g.add_edge(1, 2, Poly::from_ints(&[2, 1])).unwrap();
        g.add_edge(2, 0, Poly::from_ints(&[0, 1])).unwrap();
        g.add_edge(1, 3, Poly::linear(ratio(1, 3), ratio(-1, 2))).unwrap();
        g.add_edge(0, 1, Poly::from_ints(&[3])).unwrap();
        g
    }

    fn round_trip(a: Advice) {
        let text = write_advice(&a);
        let back = parse_advice(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(write_advice(&back), text);
        assert_eq!(peek_kind(&text).unwrap(), a.kind());
    }

    #[test]
    fn linear_round_trip() {
        round_trip(Advice::Linear(preprocess_linear(&graph()).unwrap()));
    }

    #[test]
    fn minbase_round_trip() {
        round_trip(Advice::Minbase(preprocess_minbase(&graph(), &OracleConfig::default()).unwrap()));
    }

    #[test]
    fn surplus_round_trip() {
        let p = SurplusParams::new(int(-1), int(1), ratio(1, 2), 7);
        round_trip(Advice::Surplus(preprocess_surplus(&graph(), &p).unwrap()));
    }

    #[test]
    fn rejects_damage() {
        let a = Advice::Linear(preprocess_linear(&graph()).unwrap());
        let text = write_advice(&a);
        assert_eq!(parse_advice("hello"), Err(AdviceError::BadHeader));
        assert!(matches!(
            parse_advice(&text.replace("kind=linear", "kind=cubic")),
            Err(AdviceError::UnknownKind(_))
        ));
        let cut: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_advice(&cut), Err(AdviceError::Truncated(_))));
        assert!(matches!(parse_advice(&format!("{text}extra\n")), Err(AdviceError::Syntax { .. })));
    }
}
