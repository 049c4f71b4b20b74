use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number, serialized as `"p/q"` or `"n"`.
pub type Rational = BigRational;

/// A rational number or one of the two infinities.
///
/// Variant order gives the total order directly: `-inf < r < +inf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational `{0}`")]
pub struct ParseRationalError(pub String);

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(n, d))
}

impl ExtendedRational {
    pub fn finite(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Image under `x -> slope * x + offset`; infinities follow the sign of the slope.
    pub fn affine(&self, slope: &Rational, offset: &Rational) -> Self {
        debug_assert!(!slope.is_zero());
        match self {
            ExtendedRational::Finite(r) => ExtendedRational::Finite(slope * r + offset),
            ExtendedRational::NegInf if slope.is_positive() => ExtendedRational::NegInf,
            ExtendedRational::NegInf => ExtendedRational::PosInf,
            ExtendedRational::PosInf if slope.is_positive() => ExtendedRational::PosInf,
            ExtendedRational::PosInf => ExtendedRational::NegInf,
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }
}

impl From<i64> for ExtendedRational {
    fn from(n: i64) -> Self {
        ExtendedRational::Finite(int(n))
    }
}

impl PartialEq<Rational> for ExtendedRational {
    fn eq(&self, other: &Rational) -> bool {
        self.as_finite() == Some(other)
    }
}

impl PartialOrd<Rational> for ExtendedRational {
    fn partial_cmp(&self, other: &Rational) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        Some(match self {
            ExtendedRational::NegInf => Less,
            ExtendedRational::Finite(r) => r.cmp(other),
            ExtendedRational::PosInf => Greater,
        })
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInf => f.write_str("-inf"),
            ExtendedRational::PosInf => f.write_str("inf"),
            ExtendedRational::Finite(r) => f.write_str(&format_rational(r)),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" => Ok(ExtendedRational::NegInf),
            "inf" | "+inf" => Ok(ExtendedRational::PosInf),
            t => parse_rational(t).map(ExtendedRational::Finite),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for plain rationals in string form.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}
