use num::Signed;

use super::{Break, MinBase, MinBaseError, Piece};
use crate::poly::{roots_in_interval, sample_point, Ext, Rational};

/// The set where a minBase is strictly negative: sorted points, and a flag
/// for each point and each open gap around them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NegativeRegion {
    points: Vec<Break>,
    // inside[2k] is the gap before point k, inside[2k + 1] the point itself.
    inside: Vec<bool>,
}

impl NegativeRegion {
    pub fn empty() -> Self {
        NegativeRegion {
            points: Vec::new(),
            inside: vec![false],
        }
    }

    pub fn from_parts(points: Vec<Break>, inside: Vec<bool>) -> Result<Self, MinBaseError> {
        if inside.len() != 2 * points.len() + 1 || points.windows(2).any(|w| w[0].at >= w[1].at) {
            return Err(MinBaseError::Malformed);
        }
        Ok(NegativeRegion { points, inside })
    }

    pub fn points(&self) -> &[Break] {
        &self.points
    }

    pub fn inside(&self) -> &[bool] {
        &self.inside
    }

    pub fn is_empty(&self) -> bool {
        !self.inside.iter().any(|&b| b)
    }

    pub fn of(m: &MinBase, tol: &Rational) -> Self {
        let mut points: Vec<Break> = Vec::new();
        for (i, seg) in m.segments().iter().enumerate() {
            let (lo, hi) = m.span(i);
            if let Piece::Poly(p) = &seg.piece {
                if !p.is_zero() {
                    let roots = roots_in_interval(p, &lo, &hi, tol).expect("valid interval");
                    points.extend(roots.into_iter().map(|r| Break {
                        at: r.value,
                        exact: r.exact,
                    }));
                }
            }
            if let Some(b) = m.breaks().get(i) {
                if points.last().is_none_or(|p| p.at < b.at) {
                    points.push(b.clone());
                }
            }
        }
        let negative = |r: &Rational| m.evaluate(r) < Ext::zero();
        let mut inside = Vec::with_capacity(2 * points.len() + 1);
        let mut lo = Ext::NegInf;
        for p in &points {
            let at = Ext::Finite(p.at.clone());
            inside.push(negative(&sample_point(&lo, &at)));
            inside.push(negative(&p.at));
            lo = at;
        }
        inside.push(negative(&sample_point(&lo, &Ext::PosInf)));

        // Drop points that separate nothing.
        let mut kept_points = Vec::new();
        let mut kept = vec![inside[0]];
        for (k, p) in points.into_iter().enumerate() {
            let (at, after) = (inside[2 * k + 1], inside[2 * k + 2]);
            if at == *kept.last().expect("nonempty") && at == after {
                continue;
            }
            kept_points.push(p);
            kept.push(at);
            kept.push(after);
        }
        NegativeRegion {
            points: kept_points,
            inside: kept,
        }
    }

    /// Membership of `r`, with the number of point comparisons made.
    pub fn contains(&self, r: &Rational) -> (bool, usize) {
        let (mut lo, mut hi, mut cmps) = (0, self.points.len(), 0);
        while lo < hi {
            let mid = (lo + hi) / 2;
            cmps += 1;
            if self.points[mid].at <= *r {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        if lo > 0 && self.points[lo - 1].at == *r {
            return (self.inside[2 * lo - 1], cmps + 1);
        }
        (self.inside[2 * lo], cmps + 1)
    }

    pub fn near_inexact_point(&self, r: &Rational, tol: &Rational) -> bool {
        let k = self.points.partition_point(|p| p.at <= *r);
        [k.checked_sub(1), Some(k)]
            .into_iter()
            .flatten()
            .filter_map(|i| self.points.get(i))
            .any(|p| !p.exact && (&p.at - r).abs() <= *tol)
    }
}
