//! Exact arithmetic helpers. Every value, ratio and bound in the crate is a
//! `Rational` so that bound checks compare exactly.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Parses `"1.5"`, `"2"`, `"-0.25"` or `"4/3"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parameter(format!("`{text}` is not a decimal or fraction"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (whole, fraction) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(bad());
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !fraction.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if fraction.len() > 15 {
        return Err(bad());
    }
    let digits = format!("{whole}{fraction}");
    let numer: i64 = if digits.is_empty() {
        0
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = 10_i64.pow(fraction.len() as u32);
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `max(a/b, b/a)` with the conventions used throughout the harness:
/// `0/0` counts as ratio 1 and a single zero side is an unbounded ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetricRatio {
    Finite(Rational),
    Unbounded,
}

impl SymmetricRatio {
    pub fn of(a: Rational, b: Rational) -> Self {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => SymmetricRatio::Finite(Rational::one()),
            (true, false) | (false, true) => SymmetricRatio::Unbounded,
            (false, false) => {
                let r = a / b;
                SymmetricRatio::Finite(if r >= Rational::one() { r } else { b / a })
            }
        }
    }

    pub fn exceeds(&self, limit: Rational) -> bool {
        match self {
            SymmetricRatio::Finite(r) => *r > limit,
            SymmetricRatio::Unbounded => true,
        }
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            SymmetricRatio::Finite(r) => Some(*r),
            SymmetricRatio::Unbounded => None,
        }
    }
}

impl std::fmt::Display for SymmetricRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SymmetricRatio::Finite(r) => write!(f, "{r}"),
            SymmetricRatio::Unbounded => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for SymmetricRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(SymmetricRatio::Unbounded)
        } else {
            parse_rational(s).map(SymmetricRatio::Finite)
        }
    }
}

/// Serde adapter storing a rational as `"p/q"` (or `"p"` for integers).
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }

    pub mod option {
        use super::super::{parse_rational, Rational};
        use serde::{de, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&r.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            let text = Option::<String>::deserialize(d)?;
            text.map(|t| parse_rational(&t).map_err(de::Error::custom)).transpose()
        }
    }
}

pub mod serde_ratio {
    use super::SymmetricRatio;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<SymmetricRatio>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<SymmetricRatio>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| t.parse().map_err(de::Error::custom)).transpose()
    }
}
