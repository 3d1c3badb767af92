use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::rational::{binomial, factorial, format_rational, int, Rational};

use super::LaurentPoly;

/// An element of `R_m = Q[s]/(s^m)`, stored as the coefficients of
/// `s^0 .. s^(m-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TruncatedPoly {
    coeffs: Vec<Rational>,
}

impl TruncatedPoly {
    pub fn zero(m: usize) -> Self {
        assert!(m >= 1, "truncation order must be positive");
        TruncatedPoly { coeffs: vec![Rational::zero(); m] }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, Rational::one())
    }

    pub fn constant(m: usize, c: Rational) -> Self {
        let mut x = Self::zero(m);
        x.coeffs[0] = c;
        x
    }

    /// `s^k`, zero once `k >= m`.
    pub fn s_pow(m: usize, k: usize) -> Self {
        let mut x = Self::zero(m);
        if k < m {
            x.coeffs[k] = Rational::one();
        }
        x
    }

    /// Coefficients beyond `m` are dropped; missing ones are zero.
    pub fn from_coeffs(m: usize, coeffs: Vec<Rational>) -> Self {
        let mut x = Self::zero(m);
        for (i, c) in coeffs.into_iter().take(m).enumerate() {
            x.coeffs[i] = c;
        }
        x
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let m = self.m();
        let c0inv = self.coeffs[0].recip();
        let mut inv = vec![Rational::zero(); m];
        inv[0] = c0inv.clone();
        for k in 1..m {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -(acc * &c0inv);
        }
        Some(TruncatedPoly { coeffs: inv })
    }

    /// Divides by `s^k` when `s^k` divides the representative; the top `k`
    /// coefficients of the quotient are undetermined in `R_m` and set to zero.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        let m = self.m();
        Some(Self::from_coeffs(m, self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Change of truncation order: drops or zero-pads coefficients.
    pub fn resize(&self, m: usize) -> Self {
        Self::from_coeffs(m, self.coeffs.clone())
    }

    /// The polynomial in `s` that this element represents, with `s` encoded
    /// as the Laurent variable.
    pub fn as_s_polynomial(&self) -> LaurentPoly {
        LaurentPoly::from_coeffs(0, self.coeffs.clone())
    }

    /// `(1 + s)^k` for any integer `k`.
    pub fn one_plus_s_pow(m: usize, k: i64) -> Self {
        TruncatedPoly { coeffs: (0..m as u64).map(|j| binomial(k, j)).collect() }
    }

    /// Image of `exp(c s)`.
    pub fn exp_of_multiple(m: usize, c: &Rational) -> Self {
        let mut coeffs = Vec::with_capacity(m);
        let mut pow = Rational::one();
        for j in 0..m as u64 {
            coeffs.push(&pow / factorial(j));
            pow *= c;
        }
        TruncatedPoly { coeffs }
    }
}

impl Add for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn add(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        assert_eq!(self.m(), rhs.m());
        TruncatedPoly { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn sub(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        assert_eq!(self.m(), rhs.m());
        TruncatedPoly { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn neg(self) -> TruncatedPoly {
        TruncatedPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedPoly {
    type Output = TruncatedPoly;
    fn mul(self, rhs: &TruncatedPoly) -> TruncatedPoly {
        assert_eq!(self.m(), rhs.m());
        let m = self.m();
        let mut coeffs = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(m - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TruncatedPoly { coeffs }
    }
}

impl fmt::Display for TruncatedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("{}*s", format_rational(c)),
                _ => format!("{}*s^{k}", format_rational(c)),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0 mod s^{}", self.m())
        } else {
            write!(f, "{} mod s^{}", parts.join(" + "), self.m())
        }
    }
}

/// Image of `p` in `R_m` under `t = 1 + s`.
pub fn truncate(p: &LaurentPoly, m: usize) -> TruncatedPoly {
    let mut acc = TruncatedPoly::zero(m);
    for (k, c) in p.terms() {
        acc = &acc + &TruncatedPoly::one_plus_s_pow(m, k).scale(c);
    }
    acc
}

/// `log(1 + s)` modulo `s^m`.
pub fn unit_log_series(m: usize) -> TruncatedPoly {
    let mut x = TruncatedPoly::zero(m);
    for j in 1..m {
        let sign = if j % 2 == 1 { 1 } else { -1 };
        x.coeffs[j] = int(sign) / int(j as i64);
    }
    x
}

/// `exp(s) - 1` modulo `s^m`.
pub fn twist_series(m: usize) -> TruncatedPoly {
    let mut x = TruncatedPoly::exp_of_multiple(m, &Rational::one());
    x.coeffs[0] = Rational::zero();
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn tp(coeffs: &[(i64, i64)]) -> TruncatedPoly {
        TruncatedPoly::from_coeffs(coeffs.len(), coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(truncate(&LaurentPoly::t(), 2), tp(&[(1, 1), (1, 1)]));
        assert_eq!(truncate(&LaurentPoly::t_pow(-1), 3), tp(&[(1, 1), (-1, 1), (1, 1)]));
        assert!(truncate(&(LaurentPoly::t() - LaurentPoly::one()), 1).is_zero());
    }

    #[test]
    fn series_examples() {
        assert!(unit_log_series(1).is_zero());
        assert_eq!(unit_log_series(3), tp(&[(0, 1), (1, 1), (-1, 2)]));
        assert_eq!(unit_log_series(2), tp(&[(0, 1), (1, 1)]));
        assert_eq!(twist_series(2), tp(&[(0, 1), (1, 1)]));
        assert_eq!(twist_series(3), tp(&[(0, 1), (1, 1), (1, 2)]));
        assert!(twist_series(1).is_zero());
    }

    #[test]
    fn inverse_of_one_plus_s() {
        let x = TruncatedPoly::one_plus_s_pow(6, 1);
        let inv = x.inverse().unwrap();
        assert_eq!(inv, TruncatedPoly::one_plus_s_pow(6, -1));
        assert_eq!(&x * &inv, TruncatedPoly::one(6));
        assert!(TruncatedPoly::s_pow(3, 1).inverse().is_none());
    }
}
