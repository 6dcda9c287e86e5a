//! The `.pwg` text format.
//!
//! ```text
//! # comment
//! n m d
//! src dst c0 c1 ... cd     (m lines)
//! ```
//!
//! Coefficients are rationals (`p/q`, integers or decimals), constant term
//! first. Lines may carry fewer than `d + 1` coefficients; missing ones are zero.

use std::fmt::Write;

use thiserror::Error;

use super::{GraphError, ParametricGraph};
use crate::poly::{parse_rational, Poly, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing header line `n m d`")]
    MissingHeader,
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        msg: msg.into(),
    }
}

pub fn parse_pwg(text: &str) -> Result<ParametricGraph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| syntax(hline, format!("bad header field {t:?}"))))
        .collect::<Result<_, _>>()?;
    let [n, m, d] = fields[..] else {
        return Err(syntax(hline, "header must be `n m d`"));
    };

    let mut g = ParametricGraph::new(n);
    for (line, body) in lines {
        let mut toks = body.split_whitespace();
        let mut vertex = |what: &str| -> Result<usize, FormatError> {
            toks.next()
                .ok_or_else(|| syntax(line, format!("missing {what}")))?
                .parse()
                .map_err(|_| syntax(line, format!("bad {what}")))
        };
        let src = vertex("source")?;
        let dst = vertex("destination")?;
        let coeffs: Vec<Rational> = toks
            .map(|t| parse_rational(t).map_err(|e| syntax(line, e.to_string())))
            .collect::<Result<_, _>>()?;
        if coeffs.is_empty() {
            return Err(syntax(line, "edge has no coefficients"));
        }
        if coeffs.len() > d + 1 {
            return Err(syntax(line, format!("{} coefficients exceed degree {d}", coeffs.len())));
        }
        g.add_edge(src, dst, Poly::new(coeffs))
            .map_err(|e| syntax(line, e.to_string()))?;
    }
    if g.edge_count() != m {
        return Err(FormatError::EdgeCount {
            expected: m,
            found: g.edge_count(),
        });
    }
    Ok(g)
}

/// Canonical text: degree field is the true degree bound and every edge line
/// carries exactly `d + 1` coefficients.
pub fn write_pwg(g: &ParametricGraph) -> String {
    let d = g.degree_bound();
    let mut out = String::new();
    writeln!(out, "{} {} {}", g.n(), g.edge_count(), d).unwrap();
    for e in g.edges() {
        write!(out, "{} {}", e.src, e.dst).unwrap();
        for k in 0..=d {
            write!(out, " {}", e.weight.coeff(k)).unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn parses_and_writes_canonically() {
        let text = "# demo\n3 2 1\n0 1 1/2 -1\n1 2 3   # trailing\n";
        let g = parse_pwg(text).unwrap();
        assert_eq!(g.edge(0).weight, Poly::new(vec![ratio(1, 2), ratio(-1, 1)]));
        assert_eq!(g.edge(1).weight, Poly::from_ints(&[3]));
        assert_eq!(write_pwg(&g), "3 2 1\n0 1 1/2 -1\n1 2 3 0\n");
        assert_eq!(parse_pwg(&write_pwg(&g)).unwrap(), g);
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        assert_eq!(parse_pwg("# only\n"), Err(FormatError::MissingHeader));
        assert!(matches!(parse_pwg("2 1 1\n0 5 1\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_pwg("2 1 0\n0 1 1 2\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_pwg("2 2 1\n0 1 1\n"), Err(FormatError::EdgeCount { expected: 2, found: 1 })));
        assert!(matches!(parse_pwg("2 1\n"), Err(FormatError::Syntax { line: 1, .. })));
    }
}
