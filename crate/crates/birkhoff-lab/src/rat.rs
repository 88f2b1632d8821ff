//! Exact rational scalars and their external text form.
//!
//! Everything numeric in this crate is a [`Rat`] — an arbitrary-precision
//! rational.  No floating point is used anywhere, so solver verdicts and
//! witnesses are exact and runs are bitwise reproducible.  The external text
//! form is `"p/q"` (canonical reduced form, `q > 0`), with plain integers
//! allowed as `"p"`; decimal literals like `"0.25"` are accepted on input for
//! convenience and converted exactly.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

/// The one scalar type of the crate.
pub type Rat = num_rational::BigRational;

/// Error parsing a rational from text.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Shorthand for an integer rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.  Panics on `d == 0`; intended for literals in code.
pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"`, or a decimal literal like `"-1.25"` exactly.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| RatParseError::Malformed(s.to_string()))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| RatParseError::Malformed(s.to_string()))?;
        if d.is_zero() {
            return Err(RatParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, decimals)) = s.split_once('.') {
        if decimals.is_empty() || !decimals.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RatParseError::Malformed(s.to_string()));
        }
        let negative = whole.starts_with('-');
        let whole_part = if whole == "-" || whole.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| RatParseError::Malformed(s.to_string()))?
        };
        let frac_part = BigInt::from_str(decimals)
            .map_err(|_| RatParseError::Malformed(s.to_string()))?;
        let scale = BigInt::from(10u8).pow(decimals.len() as u32);
        let magnitude = whole_part.abs() * &scale + frac_part;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rat::new(signed, scale));
    }
    BigInt::from_str(s)
        .map(Rat::from_integer)
        .map_err(|_| RatParseError::Malformed(s.to_string()))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter serializing a [`Rat`] through its canonical text form.
pub mod rat_string {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&fmt_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>` in canonical text form.
pub mod rat_string_vec {
    use super::{fmt_rat, parse_rat, Rat};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(v.iter().map(|r| fmt_rat(r)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(de)?;
        strings
            .iter()
            .map(|s| parse_rat(s).map_err(de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rat("3").unwrap(), int(3));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse_rat(" -3/6 ").unwrap(), frac(-1, 2));
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rat("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), frac(-3, 2));
        assert_eq!(parse_rat(".5").unwrap(), frac(1, 2));
        assert_eq!(parse_rat("-.2").unwrap(), frac(-1, 5));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_rat(""), Err(RatParseError::Empty)));
        assert!(matches!(parse_rat("1/0"), Err(RatParseError::ZeroDenominator(_))));
        assert!(matches!(parse_rat("a/b"), Err(RatParseError::Malformed(_))));
        assert!(matches!(parse_rat("1.2.3"), Err(RatParseError::Malformed(_))));
    }

    #[test]
    fn canonical_form_round_trips() {
        for s in ["0", "5", "-5", "1/2", "-7/3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&r), s);
            assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
        // Non-canonical input normalizes.
        assert_eq!(fmt_rat(&parse_rat("4/2").unwrap()), "2");
        assert_eq!(fmt_rat(&parse_rat("0.75").unwrap()), "3/4");
    }
}
