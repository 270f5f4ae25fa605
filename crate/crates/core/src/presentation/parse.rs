use thiserror::Error;

use super::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseWordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("bad exponent `{0}`")]
    BadExponent(String),
    #[error("empty factor in `{0}`")]
    EmptyFactor(String),
}

/// Parses `a*b^-1*a`, `x1@n2^3`, or `1` for the empty word. Whitespace is
/// ignored. Exponents may be any integer; the result is freely reduced.
pub fn parse_word(s: &str, names: &[String]) -> Result<Word, ParseWordError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() || compact == "1" {
        return Ok(Word::empty());
    }
    let mut letters = Vec::new();
    for factor in compact.split('*') {
        if factor.is_empty() {
            return Err(ParseWordError::EmptyFactor(s.to_string()));
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .parse()
                    .map_err(|_| ParseWordError::BadExponent(e.to_string()))?;
                (n, e)
            }
            None => (factor, 1),
        };
        if name == "1" {
            continue;
        }
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ParseWordError::UnknownGenerator(name.to_string()))?;
        letters.extend(std::iter::repeat(Letter::new(g, exp < 0)).take(exp.unsigned_abs() as usize));
    }
    Ok(Word::from_letters(letters))
}
