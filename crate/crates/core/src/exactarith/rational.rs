use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational with positive, reduced denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed rational literal {0:?} (expected \"p\" or \"p/q\")")]
    Malformed(String),
}

/// Parses `"p"` or `"p/q"` with integer `p`, `q`. Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| RationalParseError::Malformed(s.to_string()))?;
    let d = BigInt::from_str(den).map_err(|_| RationalParseError::Malformed(s.to_string()))?;
    if d.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(n, d))
}

/// Formats as `"p"` when integral, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Floor of `x`.
pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// Upper bound of `sqrt(x)` of the form `k / 2^bits`, for `x >= 0`.
pub fn sqrt_upper(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (x * Rational::from_integer(scale)).ceil().to_integer();
    let mut r = scaled.sqrt();
    if &r * &r < scaled {
        r += 1;
    }
    Rational::new(r, BigInt::one() << bits as usize)
}

/// Lower bound of `sqrt(x)` of the form `k / 2^bits`, for `x >= 0`.
pub fn sqrt_lower(x: &Rational, bits: u32) -> Rational {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = BigInt::one() << (2 * bits as usize);
    let scaled = (x * Rational::from_integer(scale)).floor().to_integer();
    Rational::new(scaled.sqrt(), BigInt::one() << bits as usize)
}

/// Rounds `x` down to a multiple of `2^-bits`.
pub fn round_down(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    Rational::new((x * Rational::from_integer(scale.clone())).floor().to_integer(), scale)
}

/// Rounds `x` up to a multiple of `2^-bits`.
pub fn round_up(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    Rational::new((x * Rational::from_integer(scale.clone())).ceil().to_integer(), scale)
}

/// Nearest multiple of `2^-bits`.
pub fn round_nearest(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits as usize;
    Rational::new((x * Rational::from_integer(scale.clone())).round().to_integer(), scale)
}

pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// `2^-bits`.
pub fn pow2_neg(bits: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << bits as usize)
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero());
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out * m * sign
}

/// True when `n` is a perfect square (negative numbers are not).
pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&rat(2, 55)), "2/55");
        assert_eq!(format_rational(&int(-3)), "-3");
        assert!(matches!(parse_rational("1/0"), Err(RationalParseError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("0.5"), Err(RationalParseError::Malformed(_))));
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = int(2);
        let lo = sqrt_lower(&two, 40);
        let hi = sqrt_upper(&two, 40);
        assert!(&lo * &lo <= two && &hi * &hi >= two);
        assert!(&hi - &lo <= pow2_neg(39));
        assert_eq!(sqrt_upper(&int(9), 10), int(3));
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(12)), BigInt::from(3));
        assert_eq!(squarefree_part(&BigInt::from(-4)), BigInt::from(-1));
        assert_eq!(squarefree_part(&BigInt::from(-75)), BigInt::from(-3));
        assert!(is_square(&BigInt::from(49)));
        assert!(!is_square(&BigInt::from(-1)));
    }
}
