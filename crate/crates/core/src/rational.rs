//! Arbitrary-precision rationals and their `"num/den"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `"n"` for integers and `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rational::from_integer(acc)
}

/// Generalized binomial coefficient `C(k, j)` for any integer `k`.
pub fn binomial(k: i64, j: u64) -> Rational {
    let mut num = Rational::one();
    for i in 0..j {
        num *= int(k - i as i64);
    }
    num / factorial(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for q in [rat(3, 4), rat(-7, 2), int(0), int(-12), rat(6, 4)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(format_rational(&rat(6, 4)), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn negative_binomials() {
        // (1+s)^-1 = 1 - s + s^2 - ...
        assert_eq!(binomial(-1, 0), int(1));
        assert_eq!(binomial(-1, 1), int(-1));
        assert_eq!(binomial(-1, 2), int(1));
        assert_eq!(binomial(-2, 2), int(3));
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 3), int(0));
    }
}
