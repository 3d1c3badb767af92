use serde::Serialize;

use crate::error::{Error, Result};

use super::LaurentPoly;

/// `p = unit * remainder * prod Phi_n^mult`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicFactorization {
    /// `(n, multiplicity)` in increasing `n`.
    pub factors: Vec<(u64, u32)>,
    /// Normalized, with no root of unity among its roots.
    pub remainder: LaurentPoly,
    /// `c t^k`.
    pub unit: LaurentPoly,
}

impl CyclotomicFactorization {
    pub fn reassemble(&self) -> LaurentPoly {
        self.factors
            .iter()
            .fold(&self.unit * &self.remainder, |acc, &(n, e)| acc * cyclotomic(n).pow(e))
    }

    pub fn is_cyclotomic(&self) -> bool {
        self.remainder.is_one()
    }

    pub fn multiplicity(&self, n: u64) -> u32 {
        self.factors.iter().find(|(k, _)| *k == n).map_or(0, |(_, e)| *e)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut x = n;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            while x.is_multiple_of(p) {
                x /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if x > 1 {
        result -= result / x;
    }
    result
}

fn mobius(n: u64) -> i32 {
    let mut x = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            x /= p;
            if x.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if x > 1 {
        sign = -sign;
    }
    sign
}

/// The `n`-th cyclotomic polynomial `prod_{d | n} (t^d - 1)^mu(n/d)`.
pub fn cyclotomic(n: u64) -> LaurentPoly {
    assert!(n >= 1);
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        match mobius(n / d) {
            1 => num = num * LaurentPoly::t_pow_minus_one(d),
            -1 => den = den * LaurentPoly::t_pow_minus_one(d),
            _ => {}
        }
    }
    num.exact_div(&den).expect("cyclotomic quotient is exact").normalize()
}

/// Splits off every cyclotomic factor by trial division. Only `Phi_n` with
/// `phi(n) <= deg p` can divide, and `phi(n) >= sqrt(n/2)` bounds the search.
pub fn cyclotomic_factor(p: &LaurentPoly) -> Result<CyclotomicFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (unit, mut rest) = p.unit_and_associate();
    let deg = rest.degree() as u64;
    let mut factors = Vec::new();
    let bound = (2 * deg * deg).max(2);
    for n in 1..=bound {
        if rest.degree() == 0 {
            break;
        }
        if euler_phi(n) > rest.degree() as u64 {
            continue;
        }
        let phi = cyclotomic(n);
        let mut e = 0;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q.normalize();
            e += 1;
        }
        if e > 0 {
            factors.push((n, e));
        }
    }
    Ok(CyclotomicFactorization { factors, remainder: rest, unit })
}
