//! Real-root isolation and pairwise comparison of polynomials on an interval.
//!
//! Degrees 1 and 2 use closed forms (a quadratic root is exact whenever the
//! discriminant is a rational square). Everything else brackets roots between
//! consecutive critical points, found recursively from the derivative, and
//! bisects each sign change down to the requested width.

use num::{BigInt, One, Signed, Zero};

use super::{rational_to_f64, Ext, Poly, PolyError, Rational};

/// A real root. Inexact roots are a rational inside a bracket of width at most
/// the tolerance that was asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub value: Rational,
    pub exact: bool,
}

/// Outcome of comparing two polynomials on an open interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    PLessEverywhere,
    QLessEverywhere,
    Equal,
    /// `p - q` vanishes at the given points inside the interval.
    Crossing(Vec<Root>),
}

/// 10^-12.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::one(), num::pow(BigInt::from(10), 12))
}

/// Real roots of `p` strictly inside `(lo, hi)`, strictly increasing.
pub fn roots_in_interval(
    p: &Poly,
    lo: &Ext,
    hi: &Ext,
    tol: &Rational,
) -> Result<Vec<Root>, PolyError> {
    if lo >= hi {
        return Err(PolyError::EmptyInterval {
            lo: lo.to_string(),
            hi: hi.to_string(),
        });
    }
    if !tol.is_positive() {
        return Err(PolyError::NonPositiveTolerance);
    }
    if p.is_zero() {
        return Err(PolyError::IdenticallyZero);
    }
    Ok(isolate(p, lo, hi, tol))
}

/// Compares `p` and `q` on `(lo, hi)` using [`default_tolerance`].
pub fn compare_on_interval(p: &Poly, q: &Poly, lo: &Ext, hi: &Ext) -> Comparison {
    compare_on_interval_tol(p, q, lo, hi, &default_tolerance())
}

/// # Panics
/// If `lo >= hi` or `tol <= 0`.
pub fn compare_on_interval_tol(
    p: &Poly,
    q: &Poly,
    lo: &Ext,
    hi: &Ext,
    tol: &Rational,
) -> Comparison {
    assert!(lo < hi, "compare_on_interval needs lo < hi");
    assert!(tol.is_positive(), "tolerance must be positive");
    let diff = p - q;
    if diff.is_zero() {
        return Comparison::Equal;
    }
    let roots = isolate(&diff, lo, hi, tol);
    if !roots.is_empty() {
        return Comparison::Crossing(roots);
    }
    let s = sample_point(lo, hi);
    match diff.sign_at(&s) {
        -1 => Comparison::PLessEverywhere,
        1 => Comparison::QLessEverywhere,
        // Only reachable if a tangential root slipped past isolation.
        _ => Comparison::Crossing(vec![Root {
            value: s,
            exact: true,
        }]),
    }
}

/// A representative point of the open interval `(lo, hi)`.
pub fn sample_point(lo: &Ext, hi: &Ext) -> Rational {
    match (lo, hi) {
        (Ext::Finite(a), Ext::Finite(b)) => (a + b) / Rational::from_integer(2.into()),
        (Ext::NegInf | Ext::PosInf, Ext::Finite(b)) => b - Rational::one(),
        (Ext::Finite(a), _) => a + Rational::one(),
        _ => Rational::zero(),
    }
}

/// The rational with the smallest denominator strictly between `a` and `b`.
///
/// # Panics
/// If `a >= b`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    assert!(a < b);
    if a.is_negative() && b.is_positive() {
        return Rational::zero();
    }
    if !b.is_positive() {
        return -simplest_above(&-b, Some(&-a));
    }
    simplest_above(a, Some(b))
}

// Continued-fraction descent; `a >= 0`, `hi = None` means unbounded.
fn simplest_above(a: &Rational, hi: Option<&Rational>) -> Rational {
    let fl = a.floor();
    let next = &fl + Rational::one();
    match hi {
        None => next,
        Some(b) if &next < b => next,
        Some(b) => {
            let frac_a = a - &fl;
            let frac_b = b - &fl;
            let lo = frac_b.recip();
            let up = if frac_a.is_zero() {
                None
            } else {
                Some(frac_a.recip())
            };
            fl + simplest_above(&lo, up.as_ref()).recip()
        }
    }
}

fn inside(x: &Rational, lo: &Ext, hi: &Ext) -> bool {
    let e = Ext::Finite(x.clone());
    lo < &e && &e < hi
}

fn isolate(p: &Poly, lo: &Ext, hi: &Ext, tol: &Rational) -> Vec<Root> {
    match p.degree() {
        0 => Vec::new(),
        1 => {
            let r = -p.coeff(0) / p.coeff(1);
            if inside(&r, lo, hi) {
                vec![Root {
                    value: r,
                    exact: true,
                }]
            } else {
                Vec::new()
            }
        }
        2 => quadratic(p, lo, hi, tol),
        _ => {
            let critical = isolate(&p.derivative(), lo, hi, tol);
            bracket(p, &critical, lo, hi, tol)
        }
    }
}

fn quadratic(p: &Poly, lo: &Ext, hi: &Ext, tol: &Rational) -> Vec<Root> {
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let four = Rational::from_integer(4.into());
    let two_a = &a + &a;
    let disc = &b * &b - four * &a * &c;
    if disc.is_negative() {
        return Vec::new();
    }
    let vertex = -&b / &two_a;
    if disc.is_zero() {
        return if inside(&vertex, lo, hi) {
            vec![Root {
                value: vertex,
                exact: true,
            }]
        } else {
            Vec::new()
        };
    }
    match rational_sqrt(&disc) {
        Some(s) => {
            let mut roots = [(-&b - &s) / &two_a, (-&b + &s) / &two_a];
            roots.sort();
            roots
                .into_iter()
                .filter(|r| inside(r, lo, hi))
                .map(|value| Root { value, exact: true })
                .collect()
        }
        None => bracket(
            p,
            &[Root {
                value: vertex,
                exact: true,
            }],
            lo,
            hi,
            tol,
        ),
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let sqrt_exact = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    let num = sqrt_exact(r.numer())?;
    let den = sqrt_exact(r.denom())?;
    Some(Rational::new(num, den))
}

/// Every root has absolute value strictly below this.
fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().abs();
    let max = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

fn bracket(p: &Poly, critical: &[Root], lo: &Ext, hi: &Ext, tol: &Rational) -> Vec<Root> {
    let bound = cauchy_bound(p);
    let start = match lo {
        Ext::Finite(r) => r.clone().max(-&bound),
        _ => -&bound,
    };
    let end = match hi {
        Ext::Finite(r) => r.clone().min(bound.clone()),
        _ => bound.clone(),
    };
    if start >= end {
        return Vec::new();
    }

    let mut points = vec![start.clone()];
    let mut roots = Vec::new();
    for c in critical {
        if c.value > start && c.value < end && points.last() != Some(&c.value) {
            if p.evaluate(&c.value).is_zero() {
                roots.push(Root {
                    value: c.value.clone(),
                    exact: true,
                });
            }
            points.push(c.value.clone());
        }
    }
    points.push(end);

    for w in points.windows(2) {
        let (sx, sy) = (p.sign_at(&w[0]), p.sign_at(&w[1]));
        if sx != 0 && sy != 0 && sx != sy {
            roots.push(bisect(p, &w[0], &w[1], sx, tol));
        }
    }
    roots.sort_by(|a, b| a.value.cmp(&b.value));
    roots.dedup_by(|a, b| a.value == b.value);
    roots
}

/// Narrows a sign-change bracket `(x, y)` to width `<= tol`.
fn bisect(p: &Poly, x: &Rational, y: &Rational, sx: i8, tol: &Rational) -> Root {
    let (mut a, mut b) = float_seed(p, x, y, sx).unwrap_or_else(|| (x.clone(), y.clone()));
    let two = Rational::from_integer(2.into());
    while &(&b - &a) > tol {
        let m = (&a + &b) / &two;
        match p.sign_at(&m) {
            0 => {
                return Root {
                    value: m,
                    exact: true,
                }
            }
            s if s == sx => a = m,
            _ => b = m,
        }
    }
    let value = simplest_between(&a, &b);
    let exact = p.evaluate(&value).is_zero();
    Root { value, exact }
}

// Cheap floating-point estimate, accepted only if the exact signs confirm it
// still brackets the root.
fn float_seed(p: &Poly, x: &Rational, y: &Rational, sx: i8) -> Option<(Rational, Rational)> {
    let (mut fa, mut fb) = (rational_to_f64(x), rational_to_f64(y));
    if !fa.is_finite() || !fb.is_finite() {
        return None;
    }
    let sign_a = sx as f64;
    for _ in 0..200 {
        let m = 0.5 * (fa + fb);
        if m <= fa || m >= fb {
            break;
        }
        if p.evaluate_f64(m) * sign_a > 0.0 {
            fa = m;
        } else {
            fb = m;
        }
    }
    let guess = 0.5 * (fa + fb);
    let delta = 1e-9 * (1.0 + guess.abs());
    let a = Rational::from_float(guess - delta)?.max(x.clone());
    let b = Rational::from_float(guess + delta)?.min(y.clone());
    if a >= b {
        return None;
    }
    let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
    (sa == sx && sb == -sx).then_some((a, b))
}
