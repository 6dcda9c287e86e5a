//! Single-variable polynomials with exact rational coefficients.
//!
//! Everything in the exact pipelines is built on [`Poly`] and [`Rational`];
//! floating point only shows up when a caller explicitly asks for it.

mod ext;
mod roots;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use ext::Ext;
pub use roots::{
    compare_on_interval, compare_on_interval_tol, default_tolerance, roots_in_interval,
    sample_point, simplest_between, Comparison, Root,
};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is identically zero; it has infinitely many roots")]
    IdenticallyZero,
    #[error("empty interval: lower bound {lo} is not below upper bound {hi}")]
    EmptyInterval { lo: String, hi: String },
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse {input:?} as a {what}")]
pub struct ParseError {
    pub input: String,
    pub what: &'static str,
}

impl ParseError {
    pub(crate) fn new(input: &str, what: &'static str) -> Self {
        ParseError {
            input: input.to_string(),
            what,
        }
    }
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseError> {
    let s = s.trim();
    let err = || ParseError::new(s, "rational");
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num: BigInt = digits.parse().map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let den = num::pow(BigInt::from(10), frac_part.len());
        return Ok(Rational::new(num, den));
    }
    let n: BigInt = s.parse().map_err(|_| err())?;
    Ok(Rational::from_integer(n))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Polynomial `c0 + c1 x + ... + cd x^d`, stored constant term first.
///
/// The coefficient vector is kept trimmed: the last stored coefficient is
/// nonzero, and the zero polynomial stores nothing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `slope * x + intercept`.
    pub fn linear(intercept: Rational, slope: Rational) -> Self {
        Poly::new(vec![intercept, slope])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn intercept(&self) -> Rational {
        self.coeff(0)
    }

    pub fn slope(&self) -> Rational {
        self.coeff(1)
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Sign of `p(x)` as -1, 0 or 1.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let v = self.evaluate(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Sign as `x -> +inf` (or `-inf` when `at_negative` is set).
    pub fn sign_at_infinity(&self, at_negative: bool) -> i8 {
        let lead = self.leading();
        if lead.is_zero() {
            return 0;
        }
        let mut s: i8 = if lead.is_positive() { 1 } else { -1 };
        if at_negative && self.degree() % 2 == 1 {
            s = -s;
        }
        s
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}

/// Space-separated coefficients, constant term first; the zero polynomial prints as `0`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split_whitespace()
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(ParseError::new(s, "polynomial"));
        }
        Ok(Poly::new(coeffs))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let p = Poly::from_ints(&[1, 2]);
        assert_eq!(p.evaluate(&int(0)), int(1));
        assert_eq!(p.evaluate(&ratio(3, 2)), int(4));
        assert_eq!(Poly::from_ints(&[0]).evaluate(&int(7)), int(0));
    }

    #[test]
    fn trims_trailing_zeros_and_reports_degree() {
        let p = Poly::from_ints(&[1, 0, 0]);
        assert_eq!(p.degree(), 0);
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(Poly::zero().degree(), 0);
        assert!(Poly::from_ints(&[0, 0]).is_zero());
        assert_eq!(Poly::from_ints(&[-2, 0, 0, 1]).degree(), 3);
    }

    #[test]
    fn arithmetic_cancels() {
        let a = Poly::from_ints(&[1, 2]);
        let b = Poly::from_ints(&[-1, -2]);
        assert!((&a + &b).is_zero());
        assert_eq!(&a - &b, Poly::from_ints(&[2, 4]));
        assert_eq!(Poly::from_ints(&[3, 0, 5]).derivative(), Poly::from_ints(&[0, 10]));
    }

    #[test]
    fn parses_rationals_in_all_accepted_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-4").unwrap(), int(-4));
        assert_eq!(parse_rational("0.2").unwrap(), ratio(1, 5));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn display_round_trips() {
        let p: Poly = "1/2 -3 0 7/4".parse().unwrap();
        assert_eq!(p.to_string(), "1/2 -3 0 7/4");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!("0".parse::<Poly>().unwrap(), Poly::zero());
    }

    #[test]
    fn sign_at_infinity_follows_leading_term() {
        let cubic = Poly::from_ints(&[0, 0, 0, -1]);
        assert_eq!(cubic.sign_at_infinity(false), -1);
        assert_eq!(cubic.sign_at_infinity(true), 1);
        let quad = Poly::from_ints(&[5, 0, 1]);
        assert_eq!(quad.sign_at_infinity(true), 1);
    }
}
