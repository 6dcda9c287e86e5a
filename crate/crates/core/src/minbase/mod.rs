//! Piecewise-polynomial lower envelopes ("minBases") and the pair-distance
//! oracle built from them by repeated doubling.
//!
//! A [`MinBase`] with breaks `b_1 < ... < b_t` has `t + 1` segments; segment
//! `i` is active on `[b_i, b_{i+1}]` with `b_0 = -inf` and `b_{t+1} = +inf`.

mod oracle;
mod region;

use std::sync::Arc;

use num::Signed;
use thiserror::Error;

use crate::graph::EdgeId;
use crate::poly::{compare_on_interval_tol, default_tolerance, sample_point, Comparison, Ext, Poly, Rational};

pub use oracle::{build_pair_oracle, OracleConfig, PairOracle, QueryAnswer, QueryStats};
pub use region::NegativeRegion;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinBaseError {
    #[error("breaks must be strictly increasing and number one less than the segments")]
    Malformed,
    #[error("a minBase reached {pieces} pieces, over the cap of {cap}")]
    SizeBudgetExceeded { pieces: usize, cap: usize },
    #[error("x = {r} is outside the domain the oracle was built for")]
    OutOfDomain { r: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece {
    NegInf,
    Poly(Poly),
    PosInf,
}

impl Piece {
    pub fn evaluate(&self, r: &Rational) -> Ext {
        match self {
            Piece::NegInf => Ext::NegInf,
            Piece::Poly(p) => Ext::Finite(p.evaluate(r)),
            Piece::PosInf => Ext::PosInf,
        }
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Piece::Poly(p) => Some(p),
            _ => None,
        }
    }
}

/// A path as a persistent concatenation tree; sharing keeps sums cheap.
#[derive(Debug, PartialEq, Eq)]
pub enum PathTag {
    Empty,
    Edge(EdgeId),
    Concat(Arc<PathTag>, Arc<PathTag>),
}

impl PathTag {
    pub fn concat(a: &Arc<PathTag>, b: &Arc<PathTag>) -> Arc<PathTag> {
        match (a.as_ref(), b.as_ref()) {
            (PathTag::Empty, _) => b.clone(),
            (_, PathTag::Empty) => a.clone(),
            _ => Arc::new(PathTag::Concat(a.clone(), b.clone())),
        }
    }

    /// Edge ids in order.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match t {
                PathTag::Empty => {}
                PathTag::Edge(e) => out.push(*e),
                PathTag::Concat(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub piece: Piece,
    pub tag: Option<Arc<PathTag>>,
}

impl Segment {
    pub fn new(piece: Piece, tag: Option<Arc<PathTag>>) -> Self {
        Segment { piece, tag }
    }

    pub fn pos_inf() -> Self {
        Segment::new(Piece::PosInf, None)
    }
}

/// A break point; inexact ones came from a bracketed irrational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Break {
    pub at: Rational,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinBase {
    breaks: Vec<Break>,
    segments: Vec<Segment>,
}

impl MinBase {
    pub fn single(segment: Segment) -> Self {
        MinBase {
            breaks: Vec::new(),
            segments: vec![segment],
        }
    }

    pub fn pos_inf() -> Self {
        MinBase::single(Segment::pos_inf())
    }

    pub fn poly(p: Poly, tag: Option<Arc<PathTag>>) -> Self {
        MinBase::single(Segment::new(Piece::Poly(p), tag))
    }

    /// Validates ordering, then merges equal neighbours.
    pub fn from_parts(breaks: Vec<Break>, segments: Vec<Segment>) -> Result<Self, MinBaseError> {
        if segments.len() != breaks.len() + 1 || breaks.windows(2).any(|w| w[0].at >= w[1].at) {
            return Err(MinBaseError::Malformed);
        }
        Ok(MinBase { breaks, segments }.coalesced())
    }

    pub fn breaks(&self) -> &[Break] {
        &self.breaks
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Number of breaks `t`.
    pub fn size(&self) -> usize {
        self.breaks.len()
    }

    pub fn piece_count(&self) -> usize {
        self.segments.len()
    }

    pub fn is_approximate(&self) -> bool {
        self.breaks.iter().any(|b| !b.exact)
    }

    /// Closed extent of segment `i`.
    pub fn span(&self, i: usize) -> (Ext, Ext) {
        let lo = if i == 0 { Ext::NegInf } else { Ext::Finite(self.breaks[i - 1].at.clone()) };
        let hi = self.breaks.get(i).map_or(Ext::PosInf, |b| Ext::Finite(b.at.clone()));
        (lo, hi)
    }

    /// Segment index covering `r` by binary search, with the number of break
    /// comparisons made. At a break the right-hand segment is chosen.
    pub fn locate(&self, r: &Rational) -> (usize, usize) {
        let (mut lo, mut hi, mut cmps) = (0, self.breaks.len(), 0);
        while lo < hi {
            let mid = (lo + hi) / 2;
            cmps += 1;
            if self.breaks[mid].at <= *r {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        (lo, cmps)
    }

    pub fn segment_at(&self, r: &Rational) -> &Segment {
        &self.segments[self.locate(r).0]
    }

    pub fn evaluate(&self, r: &Rational) -> Ext {
        self.segment_at(r).piece.evaluate(r)
    }

    /// Whether `r` is within `tol` of an inexact break.
    pub fn near_inexact_break(&self, r: &Rational, tol: &Rational) -> bool {
        let (i, _) = self.locate(r);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter_map(|k| self.breaks.get(k))
            .any(|b| !b.exact && (&b.at - r).abs() <= *tol)
    }

    /// Keeps only breaks inside `(lo, hi]`; the outer segments are stretched
    /// to infinity. Values outside `[lo, hi]` become meaningless.
    pub fn clip(&self, lo: &Rational, hi: &Rational) -> MinBase {
        let first = self.locate(lo).0;
        let last = self.breaks.partition_point(|b| b.at <= *hi);
        let breaks = self.breaks[first..last.max(first)].to_vec();
        let segments = self.segments[first..=last.max(first)].to_vec();
        MinBase { breaks, segments }.coalesced()
    }

    fn coalesced(self) -> MinBase {
        let mut breaks = Vec::with_capacity(self.breaks.len());
        let mut segments: Vec<Segment> = Vec::with_capacity(self.segments.len());
        let mut segs = self.segments.into_iter();
        segments.push(segs.next().expect("at least one segment"));
        for (b, s) in self.breaks.into_iter().zip(segs) {
            if segments.last().expect("nonempty").piece != s.piece {
                breaks.push(b);
                segments.push(s);
            }
        }
        MinBase { breaks, segments }
    }
}

// Walks the merged break sequence of two minBases, handing each elementary
// interval and the two active segments to `emit`.
fn merge_walk(a: &MinBase, b: &MinBase, mut emit: impl FnMut(Option<Break>, &Ext, &Ext, &Segment, &Segment)) {
    let (mut i, mut j) = (0, 0);
    let mut lo = Ext::NegInf;
    let mut pending: Option<Break> = None;
    loop {
        let next = match (a.breaks.get(i), b.breaks.get(j)) {
            (None, None) => None,
            (Some(x), None) => Some((x.clone(), 1)),
            (None, Some(y)) => Some((y.clone(), 2)),
            (Some(x), Some(y)) if x.at < y.at => Some((x.clone(), 1)),
            (Some(x), Some(y)) if y.at < x.at => Some((y.clone(), 2)),
            (Some(x), Some(y)) => Some((
                Break {
                    at: x.at.clone(),
                    exact: x.exact && y.exact,
                },
                3,
            )),
        };
        let hi = next.as_ref().map_or(Ext::PosInf, |(b, _)| Ext::Finite(b.at.clone()));
        emit(pending.take(), &lo, &hi, &a.segments[i], &b.segments[j]);
        let Some((brk, which)) = next else { break };
        if which & 1 != 0 {
            i += 1;
        }
        if which & 2 != 0 {
            j += 1;
        }
        lo = hi;
        pending = Some(brk);
    }
}

/// Pointwise sum. `+inf` absorbs everything, then `-inf` absorbs finite values.
pub fn min_sum(a: &MinBase, b: &MinBase) -> MinBase {
    let mut breaks = Vec::new();
    let mut segments = Vec::new();
    merge_walk(a, b, |brk, _, _, sa, sb| {
        breaks.extend(brk);
        segments.push(sum_segments(sa, sb));
    });
    MinBase { breaks, segments }.coalesced()
}

fn sum_segments(a: &Segment, b: &Segment) -> Segment {
    match (&a.piece, &b.piece) {
        (Piece::PosInf, _) | (_, Piece::PosInf) => Segment::pos_inf(),
        (Piece::NegInf, _) | (_, Piece::NegInf) => Segment::new(Piece::NegInf, None),
        (Piece::Poly(p), Piece::Poly(q)) => {
            let tag = match (&a.tag, &b.tag) {
                (Some(x), Some(y)) => Some(PathTag::concat(x, y)),
                _ => None,
            };
            Segment::new(Piece::Poly(p + q), tag)
        }
    }
}

/// Pointwise minimum of two minBases; ties keep `a`.
pub fn min_envelope2(a: &MinBase, b: &MinBase, tol: &Rational) -> MinBase {
    let mut breaks = Vec::new();
    let mut segments = Vec::new();
    merge_walk(a, b, |brk, lo, hi, sa, sb| {
        breaks.extend(brk);
        let (p, q) = match (&sa.piece, &sb.piece) {
            (Piece::NegInf, _) | (_, Piece::PosInf) => return segments.push(sa.clone()),
            (_, Piece::NegInf) | (Piece::PosInf, _) => return segments.push(sb.clone()),
            (Piece::Poly(p), Piece::Poly(q)) => (p, q),
        };
        match compare_on_interval_tol(p, q, lo, hi, tol) {
            Comparison::PLessEverywhere | Comparison::Equal => segments.push(sa.clone()),
            Comparison::QLessEverywhere => segments.push(sb.clone()),
            Comparison::Crossing(roots) => {
                let mut left = lo.clone();
                let diff = p - q;
                let mut cuts = roots.into_iter().filter(|r| {
                    let x = Ext::Finite(r.value.clone());
                    *lo < x && x < *hi
                });
                loop {
                    let cut = cuts.next();
                    let right = cut.as_ref().map_or(hi.clone(), |c| Ext::Finite(c.value.clone()));
                    if left < right {
                        let s = sample_point(&left, &right);
                        segments.push(if diff.sign_at(&s) > 0 { sb.clone() } else { sa.clone() });
                    }
                    let Some(c) = cut else { break };
                    if left < Ext::Finite(c.value.clone()) {
                        breaks.push(Break {
                            at: c.value.clone(),
                            exact: c.exact,
                        });
                    }
                    left = Ext::Finite(c.value);
                }
            }
        }
    });
    MinBase { breaks, segments }.coalesced()
}

/// Pointwise minimum of any number of minBases, merged as a balanced tree.
/// Empty input gives `+inf`.
pub fn min_envelope(bases: &[MinBase]) -> MinBase {
    min_envelope_tol(bases, &default_tolerance())
}

pub fn min_envelope_tol(bases: &[MinBase], tol: &Rational) -> MinBase {
    match bases {
        [] => MinBase::pos_inf(),
        [one] => one.clone(),
        _ => {
            let (x, y) = bases.split_at(bases.len() / 2);
            min_envelope2(&min_envelope_tol(x, tol), &min_envelope_tol(y, tol), tol)
        }
    }
}

/// A pair oracle tied to the graph it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinbaseAdvice {
    pub oracle: PairOracle,
    pub graph_hash: String,
}

pub fn preprocess_minbase(
    g: &crate::graph::ParametricGraph,
    config: &OracleConfig,
) -> Result<MinbaseAdvice, MinBaseError> {
    Ok(MinbaseAdvice {
        oracle: build_pair_oracle(g, config)?,
        graph_hash: g.content_hash(),
    })
}
