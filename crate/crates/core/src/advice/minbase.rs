use std::collections::HashMap;
use std::sync::Arc;

use super::{exactly, num, poly, rat, syntax, AdviceError, Reader, Writer};
use crate::minbase::{Break, MinBase, MinbaseAdvice, NegativeRegion, PairOracle, PathTag, Piece, Segment};

// Tag nodes are written once each, children first, so a line only refers to
// earlier lines. Sharing follows the in-memory sharing.
struct TagTable {
    ids: HashMap<*const PathTag, usize>,
    lines: Vec<String>,
}

impl TagTable {
    fn id(&mut self, root: &Arc<PathTag>) -> usize {
        let mut stack = vec![(root.clone(), false)];
        while let Some((t, expanded)) = stack.pop() {
            let key = Arc::as_ptr(&t);
            if self.ids.contains_key(&key) {
                continue;
            }
            let line = match t.as_ref() {
                PathTag::Empty => "t z".to_string(),
                PathTag::Edge(e) => format!("t e {e}"),
                PathTag::Concat(a, b) => {
                    if !expanded {
                        stack.push((t.clone(), true));
                        stack.push((b.clone(), false));
                        stack.push((a.clone(), false));
                        continue;
                    }
                    format!("t c {} {}", self.ids[&Arc::as_ptr(a)], self.ids[&Arc::as_ptr(b)])
                }
            };
            self.ids.insert(key, self.lines.len());
            self.lines.push(line);
        }
        self.ids[&Arc::as_ptr(root)]
    }
}

fn flag(b: bool) -> u8 {
    u8::from(b)
}

fn show_piece(p: &Piece) -> String {
    match p {
        Piece::NegInf => "-inf".to_string(),
        Piece::PosInf => "+inf".to_string(),
        Piece::Poly(p) => format!("p {p}"),
    }
}

pub(super) fn write(w: &mut Writer, a: &MinbaseAdvice) {
    let o = &a.oracle;
    let n = o.n();
    let pairs = || (0..n).flat_map(move |u| (0..n).map(move |v| (u, v)));
    let mut tags = TagTable {
        ids: HashMap::new(),
        lines: Vec::new(),
    };
    let mut body = Writer::default();
    for (u, v) in pairs() {
        for (name, base) in [("final", o.final_base(u, v)), ("check", o.check_base(u, v))] {
            body.line(format_args!("base {u} {v} {name} {}", base.segments().len()));
            for (i, seg) in base.segments().iter().enumerate() {
                let tag = seg.tag.as_ref().map_or_else(|| "-".to_string(), |t| tags.id(t).to_string());
                body.line(format_args!("s {tag} {}", show_piece(&seg.piece)));
                if let Some(b) = base.breaks().get(i) {
                    body.line(format_args!("b {} {}", b.at, flag(b.exact)));
                }
            }
        }
        let reg = o.region(u, v);
        let bits: String = reg.inside().iter().map(|&b| if b { '1' } else { '0' }).collect();
        body.line(format_args!("region {u} {v} {bits}"));
        for p in reg.points() {
            body.line(format_args!("b {} {}", p.at, flag(p.exact)));
        }
    }

    w.sizes(&[("n", n), ("level", o.level()), ("tags", tags.lines.len())]);
    w.line(format_args!("tol {}", o.tol()));
    match o.domain() {
        Some((lo, hi)) => w.line(format_args!("domain {lo} {hi}")),
        None => w.line(format_args!("domain -")),
    }
    for l in &tags.lines {
        w.line(format_args!("{l}"));
    }
    w.out.push_str(&body.out);
}

fn read_break(r: &mut Reader<'_>) -> Result<Break, AdviceError> {
    let (line, toks) = r.expect("b")?;
    let [at, exact] = toks[..] else {
        return Err(syntax(line, "break takes a point and a flag"));
    };
    let exact = match exact {
        "1" => true,
        "0" => false,
        _ => return Err(syntax(line, "break flag must be 0 or 1")),
    };
    Ok(Break { at: rat(line, at)?, exact })
}

fn read_base(
    r: &mut Reader<'_>,
    tags: &[Arc<PathTag>],
    u: usize,
    v: usize,
    name: &str,
) -> Result<MinBase, AdviceError> {
    let (line, toks) = r.expect("base")?;
    if toks.len() != 4 || toks[2] != name {
        return Err(syntax(line, format!("expected `base {u} {v} {name} <count>`")));
    }
    let [bu, bv, count] = exactly::<3>(line, &[toks[0], toks[1], toks[3]], "base")?;
    if (bu, bv) != (u, v) || count == 0 {
        return Err(syntax(line, format!("expected `base {u} {v} {name} <count>`")));
    }
    let mut segments = Vec::with_capacity(count);
    let mut breaks = Vec::with_capacity(count - 1);
    for i in 0..count {
        let (line, toks) = r.expect("s")?;
        let tag = match toks.first() {
            Some(&"-") => None,
            Some(t) => {
                let k: usize = num(line, t)?;
                Some(tags.get(k).ok_or_else(|| syntax(line, "unknown tag"))?.clone())
            }
            None => return Err(syntax(line, "segment lacks a tag")),
        };
        let piece = match &toks[1..] {
            ["-inf"] => Piece::NegInf,
            ["+inf"] => Piece::PosInf,
            ["p", coeffs @ ..] if !coeffs.is_empty() => Piece::Poly(poly(line, coeffs)?),
            _ => return Err(syntax(line, "bad piece")),
        };
        segments.push(Segment::new(piece, tag));
        if i + 1 < count {
            breaks.push(read_break(r)?);
        }
    }
    MinBase::from_parts(breaks, segments).map_err(|e| syntax(line, e.to_string()))
}

pub(super) fn read(r: &mut Reader<'_>) -> Result<MinbaseAdvice, AdviceError> {
    let [n, level, tag_count] = r.sizes(&["n", "level", "tags"])?.try_into().expect("three keys");
    let (line, toks) = r.expect("tol")?;
    let [tol] = toks[..] else {
        return Err(syntax(line, "tol takes one value"));
    };
    let tol = rat(line, tol)?;
    let (line, toks) = r.expect("domain")?;
    let domain = match toks[..] {
        ["-"] => None,
        [lo, hi] => Some((rat(line, lo)?, rat(line, hi)?)),
        _ => return Err(syntax(line, "domain takes `-` or two bounds")),
    };

    let mut tags: Vec<Arc<PathTag>> = Vec::with_capacity(tag_count);
    for _ in 0..tag_count {
        let (line, toks) = r.expect("t")?;
        let child = |t: &str| -> Result<Arc<PathTag>, AdviceError> {
            let k: usize = num(line, t)?;
            tags.get(k).cloned().ok_or_else(|| syntax(line, "tag refers forward"))
        };
        let node = match toks[..] {
            ["z"] => PathTag::Empty,
            ["e", e] => PathTag::Edge(num(line, e)?),
            ["c", a, b] => PathTag::Concat(child(a)?, child(b)?),
            _ => return Err(syntax(line, "bad tag node")),
        };
        tags.push(Arc::new(node));
    }

    let mut finals = Vec::with_capacity(n * n);
    let mut checks = Vec::with_capacity(n * n);
    let mut regions = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            finals.push(read_base(r, &tags, u, v, "final")?);
            checks.push(read_base(r, &tags, u, v, "check")?);
            let (line, toks) = r.expect("region")?;
            let [ru, rv, bits] = toks[..] else {
                return Err(syntax(line, "region takes a pair and flags"));
            };
            if (num::<usize>(line, ru)?, num::<usize>(line, rv)?) != (u, v) {
                return Err(syntax(line, format!("expected region {u} {v}")));
            }
            let inside: Vec<bool> = bits
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(syntax(line, "region flags must be 0 or 1")),
                })
                .collect::<Result<_, _>>()?;
            if inside.len().is_multiple_of(2) {
                return Err(syntax(line, "region needs an odd number of flags"));
            }
            let points = (0..inside.len() / 2).map(|_| read_break(r)).collect::<Result<_, _>>()?;
            regions.push(NegativeRegion::from_parts(points, inside).map_err(|e| syntax(line, e.to_string()))?);
        }
    }
    let oracle = PairOracle::from_parts(n, level, tol, domain, finals, checks, regions)
        .map_err(|e| AdviceError::Syntax { line: 0, msg: e.to_string() })?;
    Ok(MinbaseAdvice {
        oracle,
        graph_hash: String::new(),
    })
}
