//! Exact rational helpers shared by the statistics modules.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type BigCount = BigUint;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_count(c: &BigCount) -> Rational {
    Rational::from_integer(BigInt::from(c.clone()))
}

/// Parses `"p"` or `"p/q"` with integer `p`, `q`. Decimal input is rejected
/// rather than rounded.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::parse("rational", text))?;
    let den: BigInt = den.parse().map_err(|_| Error::parse("rational", text))?;
    if den.is_zero() {
        return Err(Error::parse("rational", text));
    }
    Ok(Rational::new(num, den))
}

/// Lowest terms, sign on the numerator; integers print without `/1`.
pub fn to_canonical(r: &Rational) -> String {
    r.to_string()
}

pub fn approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Returns `Some(r)` if the rational is an integer.
pub fn as_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rational("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("2/-4").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn rejects_decimals_and_zero_denominator() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(to_canonical(&ratio(16, 10)), "8/5");
        assert_eq!(to_canonical(&ratio(3, -9)), "-1/3");
        assert_eq!(to_canonical(&int(4)), "4");
    }
}
