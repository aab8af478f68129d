//! Exact rationals used for every endpoint and length.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `1/m`.
pub fn reciprocal(m: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(m))
}

pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut acc = Rational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    acc
}

/// Always `p/q`, integers included (`3/1`, `0/1`).
pub fn format(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `p/q` or a bare integer.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::Syntax {
        offset: 0,
        message: format!("not a rational: {text:?}"),
    };
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

/// Largest integer `M` with `M <= x`, for positive `x`.
pub fn floor_u64(x: &Rational) -> u64 {
    let f = x.floor().to_integer();
    u64::try_from(f).unwrap_or(u64::MAX)
}

/// Decimal approximation for presentation-only output (SVG).
pub fn approx(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_is_always_fractional() {
        assert_eq!(format(&int(3)), "3/1");
        assert_eq!(format(&ratio(6, 8)), "3/4");
        assert_eq!(format(&int(0)), "0/1");
    }

    #[test]
    fn parse_round_trips() {
        assert_eq!(parse("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse("2").unwrap(), int(2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let half = ratio(1, 2);
        assert_eq!(pow(&half, 10), ratio(1, 1024));
        assert_eq!(pow(&half, 0), int(1));
    }
}
