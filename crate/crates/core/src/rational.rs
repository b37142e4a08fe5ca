//! Exact rationals and their `"p/q"` string form.

use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Abs, Ceiling, Floor};
use thiserror::Error;

pub use malachite_nz::integer::Integer;
pub use malachite_q::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational {0:?}")]
pub struct RationalParseError(pub String);

/// Shorthand for a small rational `n/d`. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_signeds(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// Parses `"p/q"`, `"p"`, with optional sign on `p`. The denominator must be
/// positive and nonzero.
pub fn parse(s: &str) -> Result<Rational, RationalParseError> {
    let err = || RationalParseError(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) || den.is_some_and(|d| !digits(d)) {
        return Err(err());
    }
    let num = Integer::from_str(num).map_err(|_| err())?;
    let den = match den {
        Some(d) => Integer::from_str(d).map_err(|_| err())?,
        None => Integer::from(1),
    };
    if den == 0 {
        return Err(err());
    }
    Ok(Rational::from_integers(num, den))
}

/// Canonical text form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format(x: &Rational) -> String {
    x.to_string()
}

pub fn floor_int(x: &Rational) -> Integer {
    x.floor()
}

pub fn ceil_int(x: &Rational) -> Integer {
    x.ceiling()
}

pub fn from_int(n: Integer) -> Rational {
    Rational::from(n)
}

/// `x - floor(x)`, in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - Rational::from(floor_int(x))
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Serde adapters storing rationals as canonical strings.
pub mod serde_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&format(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }
}
