use super::{exactly, ext, num, rat, syntax, AdviceError, Reader, Writer};
use crate::feasibility::FeasibleInterval;
use crate::graph::EdgeId;
use crate::linear::LinearAdvice;
use crate::poly::Poly;
use crate::reweight::VertexPotential;

pub(super) fn write(w: &mut Writer, a: &LinearAdvice) {
    w.sizes(&[("n", a.n()), ("families", a.families.len())]);
    w.line(format_args!("interval {} {}", a.interval.alpha, a.interval.beta));
    for (name, cycle) in [("alpha", &a.interval.alpha_witness), ("beta", &a.interval.beta_witness)] {
        let body = match cycle {
            Some(c) => c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
            None => "-".to_string(),
        };
        w.line(format_args!("witness {name} {body}"));
    }
    for f in &a.families {
        w.line(format_args!("family {} {}", f.lo, f.hi));
        for (v, p) in f.funcs.iter().enumerate() {
            w.line(format_args!("{v} {} {}", p.slope(), p.intercept()));
        }
    }
}

pub(super) fn read(r: &mut Reader<'_>) -> Result<LinearAdvice, AdviceError> {
    let [n, families] = r.sizes(&["n", "families"])?.try_into().expect("two keys");
    let (line, toks) = r.expect("interval")?;
    let [lo, hi] = toks[..] else {
        return Err(syntax(line, "interval takes two values"));
    };
    let mut interval = FeasibleInterval {
        alpha: ext(line, lo)?,
        beta: ext(line, hi)?,
        alpha_witness: None,
        beta_witness: None,
    };
    for (name, slot) in [("alpha", &mut interval.alpha_witness), ("beta", &mut interval.beta_witness)] {
        let (line, toks) = r.expect("witness")?;
        if toks.first() != Some(&name) || toks.len() < 2 {
            return Err(syntax(line, format!("expected `witness {name} ...`")));
        }
        if toks[1..] != ["-"] {
            *slot = Some(toks[1..].iter().map(|t| num::<EdgeId>(line, t)).collect::<Result<_, _>>()?);
        }
    }
    let mut fams = Vec::with_capacity(families);
    for _ in 0..families {
        let (line, toks) = r.expect("family")?;
        let [lo, hi] = toks[..] else {
            return Err(syntax(line, "family takes two bounds"));
        };
        let (lo, hi) = (ext(line, lo)?, ext(line, hi)?);
        let mut funcs = Vec::with_capacity(n);
        for v in 0..n {
            let (line, toks) = r
                .next_line()
                .ok_or_else(|| AdviceError::Truncated("potential line".into()))?;
            let [idx] = exactly::<1>(line, &toks[..1], "vertex")?;
            if idx != v || toks.len() != 3 {
                return Err(syntax(line, format!("expected `{v} slope intercept`")));
            }
            funcs.push(Poly::linear(rat(line, toks[2])?, rat(line, toks[1])?));
        }
        fams.push(VertexPotential { funcs, lo, hi });
    }
    Ok(LinearAdvice::new(interval, fams, String::new()))
}
