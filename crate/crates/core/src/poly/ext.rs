use std::fmt;
use std::str::FromStr;

use num::Zero;

use super::{parse_rational, ParseError, Rational};

/// A rational extended with both infinities.
///
/// The derived ordering is the intended one: `NegInf < Finite(_) < PosInf`,
/// with finite values compared exactly.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Ext {
    pub fn zero() -> Self {
        Ext::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Ext::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn into_finite(self) -> Option<Rational> {
        match self {
            Ext::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Sum where `+inf` absorbs everything (no route) and `-inf` beats finite values.
    pub fn add(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Ext::NegInf => f64::NEG_INFINITY,
            Ext::PosInf => f64::INFINITY,
            Ext::Finite(r) => super::rational_to_f64(r),
        }
    }
}

impl From<Rational> for Ext {
    fn from(r: Rational) -> Self {
        Ext::Finite(r)
    }
}

impl From<Option<Rational>> for Ext {
    /// `None` reads as "unreachable", i.e. `+inf`.
    fn from(r: Option<Rational>) -> Self {
        r.map_or(Ext::PosInf, Ext::Finite)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::PosInf => f.write_str("+inf"),
            Ext::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for Ext {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(Ext::NegInf),
            "+inf" | "inf" => Ok(Ext::PosInf),
            other => parse_rational(other).map(Ext::Finite),
        }
    }
}
