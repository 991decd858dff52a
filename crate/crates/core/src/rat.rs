//! Exact rational scalars and their canonical `"p/q"` text form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// The scalar type used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Shorthand for small rational constants.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// Shorthand for integer constants.
pub fn int(value: i64) -> Rat {
    Rat::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("denominator must be positive in {0:?}")]
    NegativeDenominator(String),
    #[error("rational {0:?} is not in lowest terms")]
    NotNormalized(String),
}

/// Parses `"p"` or `"p/q"` with `q > 0` and `gcd(p, q) = 1`.
///
/// Unnormalized input is rejected rather than silently reduced, so that
/// manifests have a single canonical spelling per value.
pub fn parse_rat(text: &str) -> Result<Rat, RatParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RatParseError::Empty);
    }
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_str
        .parse()
        .map_err(|_| RatParseError::Malformed(text.to_string()))?;
    let denom: BigInt = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| RatParseError::Malformed(text.to_string()))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(RatParseError::ZeroDenominator(text.to_string()));
    }
    if denom.is_negative() {
        return Err(RatParseError::NegativeDenominator(text.to_string()));
    }
    if !numer.gcd(&denom).is_one() {
        return Err(RatParseError::NotNormalized(text.to_string()));
    }
    Ok(Rat::new(numer, denom))
}

/// Formats a rational canonically: integers as `"p"`, everything else `"p/q"`.
pub fn format_rat(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_canonical_forms() {
        assert_eq!(parse_rat("3").unwrap(), int(3));
        assert_eq!(parse_rat("-3").unwrap(), int(-3));
        assert_eq!(parse_rat("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7/3").unwrap(), rat(-7, 3));
        assert_eq!(parse_rat("0").unwrap(), int(0));
    }

    #[test]
    fn parse_rejects_denormalized_forms() {
        assert!(matches!(
            parse_rat("2/4"),
            Err(RatParseError::NotNormalized(_))
        ));
        assert!(matches!(
            parse_rat("1/-2"),
            Err(RatParseError::NegativeDenominator(_))
        ));
        assert!(matches!(
            parse_rat("1/0"),
            Err(RatParseError::ZeroDenominator(_))
        ));
        assert!(matches!(parse_rat("a/b"), Err(RatParseError::Malformed(_))));
        assert!(matches!(parse_rat(""), Err(RatParseError::Empty)));
    }

    #[test]
    fn format_round_trips() {
        for text in ["0", "5", "-5", "1/2", "-22/7"] {
            let value = parse_rat(text).unwrap();
            assert_eq!(format_rat(&value), text);
        }
    }
}
