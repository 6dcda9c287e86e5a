use super::{num, opt_num, opt_poly, rat, show_opt, show_opt_poly, syntax, AdviceError, Reader, Writer};
use crate::graph::MinPlusFactor;
use crate::surplus::{Constants, CrudeTable, HubTrees, RefinedTable, SurplusAdvice, NO_HUB};

fn show_ids(ids: &[u32]) -> String {
    let body: Vec<String> = ids
        .iter()
        .map(|&i| if i == u32::MAX { "-".to_string() } else { i.to_string() })
        .collect();
    body.join(" ")
}

fn read_ids(line: usize, toks: &[&str], len: usize) -> Result<Vec<u32>, AdviceError> {
    if toks.len() != len {
        return Err(syntax(line, format!("expected {len} entries, found {}", toks.len())));
    }
    toks.iter()
        .map(|t| opt_num::<u32>(line, t).map(|x| x.unwrap_or(u32::MAX)))
        .collect()
}

pub(super) fn write(w: &mut Writer, a: &SurplusAdvice) {
    let n = a.n;
    w.sizes(&[
        ("n", n),
        ("crude", a.crude.len()),
        ("refined", a.refined.len()),
        ("hubs", a.hubs.len()),
    ]);
    w.line(format_args!("params {} {} {} {}", a.alpha, a.beta, a.epsilon, a.seed));
    let c = &a.constants;
    w.line(format_args!(
        "constants {} {} {} {} {} {} {}",
        c.k, c.n0, c.n1, c.rho0, c.rho1, c.hop_limit, c.hub_draws
    ));
    let hubs: Vec<String> = a.hubs.iter().map(ToString::to_string).collect();
    w.line(format_args!("hubs {}", hubs.join(" ")));

    for (i, t) in a.crude.iter().enumerate() {
        w.line(format_args!("crude {i} {} {}", t.root, t.factors.len()));
        for f in &t.factors {
            match f {
                MinPlusFactor::Identity => w.line(format_args!("x i")),
                MinPlusFactor::Edges(ids) => w.line(format_args!("x e {}", show_ids(ids))),
                MinPlusFactor::Product { left, right, mid } => {
                    w.line(format_args!("x p {left} {right} {}", show_ids(mid)))
                }
            }
        }
        for f in &t.f {
            w.line(format_args!("f {}", show_opt_poly(f)));
        }
    }
    for (j, t) in a.refined.iter().enumerate() {
        w.line(format_args!("refined {j}"));
        for trees in &t.trees {
            for v in 0..n {
                w.line(format_args!("o {} {}", show_opt(&trees.out_parent[v]), show_opt_poly(&trees.out_f[v])));
                w.line(format_args!("i {} {}", show_opt(&trees.in_parent[v]), show_opt_poly(&trees.in_f[v])));
            }
        }
        w.line(format_args!("best {}", show_ids(&t.best)));
    }
}

fn one<'a>(line: usize, toks: &[&'a str], what: &str) -> Result<&'a str, AdviceError> {
    match toks {
        [t] => Ok(t),
        _ => Err(syntax(line, format!("{what} takes one value"))),
    }
}

pub(super) fn read(r: &mut Reader<'_>) -> Result<SurplusAdvice, AdviceError> {
    let [n, crude_len, refined_len, hub_len] =
        r.sizes(&["n", "crude", "refined", "hubs"])?.try_into().expect("four keys");
    let (line, toks) = r.expect("params")?;
    let [alpha, beta, epsilon, seed] = toks[..] else {
        return Err(syntax(line, "params takes four values"));
    };
    let (alpha, beta, epsilon, seed) = (rat(line, alpha)?, rat(line, beta)?, rat(line, epsilon)?, num(line, seed)?);

    let (line, toks) = r.expect("constants")?;
    let [k, n0, n1, rho0, rho1, hop_limit, hub_draws] = toks[..] else {
        return Err(syntax(line, "constants takes seven values"));
    };
    let constants = Constants {
        k: rat(line, k)?,
        n0: num(line, n0)?,
        n1: num(line, n1)?,
        rho0: rat(line, rho0)?,
        rho1: rat(line, rho1)?,
        hop_limit: num(line, hop_limit)?,
        hub_draws: num(line, hub_draws)?,
    };

    let (line, toks) = r.expect("hubs")?;
    if toks.len() != hub_len {
        return Err(syntax(line, format!("expected {hub_len} hubs")));
    }
    let hubs = toks.iter().map(|t| num(line, t)).collect::<Result<Vec<usize>, _>>()?;

    let mut crude = Vec::with_capacity(crude_len);
    for i in 0..crude_len {
        let (line, toks) = r.expect("crude")?;
        let [idx, root, count] = super::exactly::<3>(line, &toks, "crude")?;
        if idx != i {
            return Err(syntax(line, format!("expected crude {i}")));
        }
        let mut factors = Vec::with_capacity(count);
        for _ in 0..count {
            let (line, toks) = r.expect("x")?;
            factors.push(match toks.split_first() {
                Some((&"i", [])) => MinPlusFactor::Identity,
                Some((&"e", ids)) => MinPlusFactor::Edges(read_ids(line, ids, n * n)?),
                Some((&"p", [left, right, mid @ ..])) => MinPlusFactor::Product {
                    left: num(line, left)?,
                    right: num(line, right)?,
                    mid: read_ids(line, mid, n * n)?,
                },
                _ => return Err(syntax(line, "bad factor")),
            });
        }
        if root >= factors.len() {
            return Err(syntax(line, "root factor out of range"));
        }
        let mut f = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let (line, toks) = r.expect("f")?;
            f.push(opt_poly(line, &toks)?);
        }
        crude.push(CrudeTable { f, factors, root });
    }

    let mut refined = Vec::with_capacity(refined_len);
    for j in 0..refined_len {
        let (line, toks) = r.expect("refined")?;
        if num::<usize>(line, one(line, &toks, "refined")?)? != j {
            return Err(syntax(line, format!("expected refined {j}")));
        }
        let mut trees = Vec::with_capacity(hub_len);
        for _ in 0..hub_len {
            let mut t = HubTrees {
                out_f: Vec::with_capacity(n),
                out_parent: Vec::with_capacity(n),
                in_f: Vec::with_capacity(n),
                in_parent: Vec::with_capacity(n),
            };
            for _ in 0..n {
                for (tag, parents, funcs) in [("o", &mut t.out_parent, &mut t.out_f), ("i", &mut t.in_parent, &mut t.in_f)] {
                    let (line, toks) = r.expect(tag)?;
                    let Some((p, rest)) = toks.split_first() else {
                        return Err(syntax(line, "tree line needs a parent"));
                    };
                    parents.push(opt_num(line, p)?);
                    funcs.push(opt_poly(line, rest)?);
                }
            }
            trees.push(t);
        }
        let (line, toks) = r.expect("best")?;
        let best = read_ids(line, &toks, n * n)?;
        if best.iter().any(|&b| b != NO_HUB && b as usize >= hub_len) {
            return Err(syntax(line, "best hub out of range"));
        }
        refined.push(RefinedTable { trees, best });
    }

    Ok(SurplusAdvice {
        n,
        alpha,
        beta,
        epsilon,
        seed,
        constants,
        hubs,
        crude,
        refined,
        graph_hash: String::new(),
    })
}
