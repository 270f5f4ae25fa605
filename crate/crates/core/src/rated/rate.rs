use std::cmp::Ordering;
use std::fmt;

use num_traits::One;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{format_rational, parse_rational, ParseRationalError, Q};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RateError {
    #[error(transparent)]
    Parse(#[from] ParseRationalError),
    #[error("rate {0} is below 1")]
    BelowOne(String),
}

/// An exact rational rate `>= 1`, or infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rate {
    Finite(Q),
    Infinite,
}

impl Rate {
    pub fn new(q: Q) -> Result<Self, RateError> {
        if q < Q::one() {
            return Err(RateError::BelowOne(format_rational(&q)));
        }
        Ok(Rate::Finite(q))
    }

    pub fn one() -> Self {
        Rate::Finite(Q::one())
    }

    /// `p/q`; panics when below one. For constants in code and tests.
    pub fn ratio(p: i64, q: i64) -> Self {
        Rate::new(Q::new(p.into(), q.into())).expect("rate >= 1")
    }

    pub fn integer(p: i64) -> Self {
        Rate::ratio(p, 1)
    }

    /// Accepts `p/q`, `p`, or `inf`.
    pub fn parse(s: &str) -> Result<Self, RateError> {
        if s.trim() == "inf" {
            return Ok(Rate::Infinite);
        }
        Rate::new(parse_rational(s)?)
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Rate::Finite(q) => Some(q),
            Rate::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Rate::Infinite)
    }
}

impl Ord for Rate {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rate::Finite(a), Rate::Finite(b)) => a.cmp(b),
            (Rate::Finite(_), Rate::Infinite) => Ordering::Less,
            (Rate::Infinite, Rate::Finite(_)) => Ordering::Greater,
            (Rate::Infinite, Rate::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Rate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Finite(q) => write!(f, "{}", format_rational(q)),
            Rate::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct RateVisitor;

impl Visitor<'_> for RateVisitor {
    type Value = Rate;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a rate as \"p/q\", an integer, or \"inf\"")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rate, E> {
        Rate::parse(v).map_err(E::custom)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rate, E> {
        Rate::new(Q::from_integer(v.into())).map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rate, E> {
        Rate::new(Q::from_integer(v.into())).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RateVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_order() {
        assert_eq!(Rate::parse("4/2").unwrap(), Rate::integer(2));
        assert!(Rate::parse("7/2").unwrap() > Rate::integer(3));
        assert!(Rate::Infinite > Rate::integer(1_000_000));
        assert_eq!(Rate::parse("inf").unwrap().to_string(), "inf");
        assert!(matches!(Rate::parse("1/2"), Err(RateError::BelowOne(_))));
        assert!(Rate::parse("2.0").is_err());
    }

    #[test]
    fn serde_rejects_floats() {
        let r: Rate = serde_json::from_str("\"3/2\"").unwrap();
        assert_eq!(r, Rate::ratio(3, 2));
        let r: Rate = serde_json::from_str("2").unwrap();
        assert_eq!(r, Rate::integer(2));
        assert!(serde_json::from_str::<Rate>("2.0").is_err());
        assert_eq!(serde_json::to_string(&Rate::ratio(6, 4)).unwrap(), "\"3/2\"");
    }
}
