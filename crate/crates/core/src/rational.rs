//! Exact rationals: parsing `p/q` and `p`, reduced printing, serde as strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("`{0}` is not an exact rational (expected `p/q` or an integer)")]
pub struct ParseRationalError(pub String);

/// Parses `7`, `-3/4`, `+2/6`. Decimal points, exponents and zero
/// denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Q, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    let int = |x: &str| -> Result<BigInt, ParseRationalError> {
        let digits = x.strip_prefix(['+', '-']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        x.parse().map_err(|_| err())
    };
    match t.split_once('/') {
        Some((p, q)) => {
            if !q.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let q = int(q)?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Q::new(int(p)?, q))
        }
        None => Ok(Q::from_integer(int(t)?)),
    }
}

/// Reduced form: `p` when the denominator is one, else `p/q`.
pub fn format_rational(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Serde helper for `Vec<Q>` as a list of strings.
pub mod serde_vec {
    use super::{format_rational, parse_rational, Q};
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("4/2").unwrap(), qi(2));
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-3").unwrap()), "-3");
        assert_eq!(format_rational(&parse_rational(" 7/1 ").unwrap()), "7");
    }

    #[test]
    fn rejects_floats_and_junk() {
        for s in ["2.0", "1e3", "1/0", "", "/2", "1/", "a", "1/-2", "1//2", "1/+2", "0x10"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }
}
