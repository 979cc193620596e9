//! Exact rational scalars and their text representation.
//!
//! Every distance, epsilon and bound in this crate is a `BigRational`.
//! On input we accept `"p/q"`, plain integers and finite decimals; on
//! output we always emit lowest-terms `"p/q"` (or a bare integer when
//! the denominator is 1), so files round-trip byte-identically.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p/q"`, an integer string, or a finite decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RationalParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(RationalParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Invalid(s.to_string()));
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part
            .strip_prefix(['-', '+'])
            .unwrap_or(int_part);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(RationalParseError::Invalid(s.to_string()));
        }
        let int_digits = if int_digits.is_empty() { "0" } else { int_digits };
        let combined = format!("{int_digits}{frac_part}");
        let n = BigInt::from_str(&combined)
            .map_err(|_| RationalParseError::Invalid(s.to_string()))?;
        let d = BigInt::from(10u8).pow(frac_part.len() as u32);
        let value = Rational::new(n, d);
        return Ok(if negative { -value } else { value });
    }
    let n = BigInt::from_str(s).map_err(|_| RationalParseError::Invalid(s.to_string()))?;
    Ok(Rational::from_integer(n))
}

/// Canonical text form: lowest terms, bare integer when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_three_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rational(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rational(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rational_int(7));
        assert_eq!(parse_rational("1.25").unwrap(), rational(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational("0.1").unwrap(), rational(1, 10));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a.b").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("1e3").is_err());
    }

    #[test]
    fn canonical_formatting() {
        assert_eq!(format_rational(&rational(6, 8)), "3/4");
        assert_eq!(format_rational(&rational(8, 4)), "2");
        assert_eq!(format_rational(&rational(-1, 2)), "-1/2");
    }

    #[test]
    fn round_trip_is_canonical() {
        for s in ["3/4", "2", "-5/7", "0"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), *s);
        }
        // decimals normalize to p/q on output
        let r = parse_rational("0.20").unwrap();
        assert_eq!(format_rational(&r), "1/5");
    }
}
