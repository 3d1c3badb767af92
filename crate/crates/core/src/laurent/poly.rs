use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, parse_rational, Rational};

/// An element of `Q[t, t^-1]`.
///
/// Stored densely from the lowest exponent; both end coefficients are nonzero
/// and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn t_pow(k: i64) -> Self {
        Self::monomial(Rational::one(), k)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::from_coeffs(k, vec![c])
    }

    /// `coeffs[i]` is the coefficient of `t^(low + i)`.
    pub fn from_coeffs(low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| int(c)).collect())
    }

    /// `t^k - 1`.
    pub fn t_pow_minus_one(k: u64) -> Self {
        Self::t_pow(k as i64) - Self::one()
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let map: BTreeMap<i64, Rational> = terms.into_iter().fold(BTreeMap::new(), |mut acc, (k, c)| {
            *acc.entry(k).or_insert_with(Rational::zero) += c;
            acc
        });
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in map {
            coeffs[(k - lo) as usize] = c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Units of the Laurent ring are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Euclidean size: `high - low`; `None` for zero.
    pub fn width(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    /// Degree of the canonical associate.
    pub fn degree(&self) -> usize {
        self.width().unwrap_or(0)
    }

    pub fn coeff(&self, k: i64) -> Rational {
        if self.is_zero() || k < self.low {
            return Rational::zero();
        }
        self.coeffs.get((k - self.low) as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The substitution `t -> t^-1`.
    pub fn conjugate(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let high = self.high_exp().unwrap();
        LaurentPoly { low: -high, coeffs: self.coeffs.iter().rev().cloned().collect() }
    }

    /// The substitution `t -> t^n` for `n >= 1`.
    pub fn compose_power(&self, n: u64) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k * n as i64, c.clone())))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        assert!(!x.is_zero() || self.low >= 0, "evaluating a negative power at 0");
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.low >= 0 {
            acc * pow_rational(x, self.low as u64)
        } else {
            acc / pow_rational(x, (-self.low) as u64)
        }
    }

    /// Splits `self = unit * q` with `unit = c t^k` and `q` the canonical
    /// associate: an ordinary monic polynomial with nonzero constant term.
    pub fn unit_and_associate(&self) -> (LaurentPoly, LaurentPoly) {
        if self.is_zero() {
            return (Self::one(), Self::zero());
        }
        let lead = self.leading_coeff().unwrap().clone();
        let inv = lead.recip();
        let q = LaurentPoly { low: 0, coeffs: self.coeffs.iter().map(|c| c * &inv).collect() };
        (Self::monomial(lead, self.low), q)
    }

    pub fn normalize(&self) -> Self {
        self.unit_and_associate().1
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.leading_coeff().unwrap().is_one())
    }

    /// Division with remainder for the Euclidean size `width`.
    ///
    /// Returns `(q, r)` with `self = q * d + r` and `r = 0` or
    /// `width(r) < width(d)`.
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (q, r) = poly_div_rem(&self.coeffs, &d.coeffs);
        (Self::from_coeffs(self.low - d.low, q), Self::from_coeffs(self.low, r))
    }

    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Normalized greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut x = a.normalize();
        let mut y = b.normalize();
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r.normalize();
        }
        x.normalize()
    }

    pub fn lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        if a.is_zero() || b.is_zero() {
            return Self::zero();
        }
        let g = Self::gcd(a, b);
        (a * b).exact_div(&g).unwrap().normalize()
    }

    /// Derivative of the canonical associate, as an ordinary polynomial.
    pub fn associate_derivative(&self) -> LaurentPoly {
        let q = self.normalize();
        Self::from_coeffs(
            0,
            q.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect(),
        )
    }

    /// No repeated irreducible factor. Units and zero count as not squarefree
    /// only when zero.
    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        Self::gcd(self, &self.associate_derivative()).is_one()
    }

    /// Largest `e` with `p^e | self`, for a non-unit `p`; `self` must be nonzero.
    pub fn multiplicity_of(&self, p: &LaurentPoly) -> usize {
        assert!(!self.is_zero() && !p.is_zero() && !p.is_unit());
        let mut e = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(p) {
            cur = q;
            e += 1;
        }
        e
    }
}

fn pow_rational(x: &Rational, e: u64) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Ascending-coefficient polynomial division; `b` must have a nonzero leading
/// coefficient.
fn poly_div_rem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r: Vec<Rational> = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    r.truncate(db);
    (q, r)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_exp().unwrap().max(rhs.high_exp().unwrap());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (src, off) in [(self, self.low - low), (rhs, rhs.low - low)] {
            for (i, c) in src.coeffs.iter().enumerate() {
                coeffs[off as usize + i] += c;
            }
        }
        LaurentPoly::from_coeffs(low, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then coefficients from the top; only used to make
/// outputs deterministic.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.low.cmp(&other.low))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers, e.g. `t^2 - 1/2*t + 3 - t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses sums of terms `c`, `c*t^k`, `c t^k`, `t^k`, `-t`, with rational
    /// `c` and integer `k`; parentheses are not supported.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes: Vec<char> = compact.chars().collect();
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for (i, &ch) in bytes.iter().enumerate() {
            let sign_split = (ch == '+' || ch == '-') && i > 0 && bytes[i - 1] != '^';
            if sign_split {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out = Vec::new();
        for term in terms {
            out.push(parse_term(&term)?);
        }
        Ok(LaurentPoly::from_terms(out))
    }
}

fn parse_term(term: &str) -> Result<(i64, Rational)> {
    let bad = || Error::Parse(format!("bad polynomial term {term:?}"));
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coef_str, mono) = match body.find('t') {
        Some(pos) => (body[..pos].trim_end_matches('*'), Some(&body[pos..])),
        None => (body, None),
    };
    let coef = if coef_str.is_empty() { Rational::one() } else { parse_rational(coef_str)? };
    let exp = match mono {
        None => 0,
        Some("t") => 1,
        Some(m) => m
            .strip_prefix("t^")
            .ok_or_else(bad)?
            .trim_matches(|c| c == '(' || c == ')')
            .parse::<i64>()
            .map_err(|_| bad())?,
    };
    Ok((exp, coef * int(sign)))
}

impl Serialize for LaurentPoly {
    /// `{"exponent": "num/den", ...}` in increasing exponent order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self.terms().collect();
        let mut map = serializer.serialize_map(Some(terms.len()))?;
        for (k, c) in terms {
            map.serialize_entry(&k.to_string(), &format_rational(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an exponent -> \"num/den\" map or a polynomial string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<LaurentPoly, E> {
                v.parse().map_err(|e: Error| E::custom(e.to_string()))
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, String>()? {
                    let exp: i64 = k.trim().parse().map_err(|_| de::Error::custom(format!("bad exponent {k:?}")))?;
                    let c = parse_rational(&v).map_err(|e| de::Error::custom(e.to_string()))?;
                    terms.push((exp, c));
                }
                Ok(LaurentPoly::from_terms(terms))
            }
        }
        deserializer.deserialize_any(PolyVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        // 3 t^-1 (t - 1)
        let x = LaurentPoly::monomial(int(3), -1) * p("t - 1");
        assert_eq!(x.normalize(), p("t - 1"));
        assert_eq!(LaurentPoly::zero().normalize(), LaurentPoly::zero());
        let y = p("t^3 - 1") * p("t - 1") * LaurentPoly::t_pow(5);
        assert_eq!(y.normalize(), p("t^4 - t^3 - t + 1"));
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["t^4 - t^3 - t + 1", "-1/2*t^3 + t - 2", "3 + t^-2", "0", "-t"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("2t^2-t^-1"), LaurentPoly::from_terms([(2, int(2)), (-1, int(-1))]));
    }

    #[test]
    fn laurent_division() {
        let a = p("t^3 + t^-2");
        let d = p("t^2 - 1");
        let (q, r) = a.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.width().unwrap_or(0) < d.width().unwrap());
        assert_eq!(p("t^2 - 1").exact_div(&p("t^-3 - t^-4")), Some(p("t^5 + t^4")));
    }

    #[test]
    fn gcd_and_squarefree() {
        let g = LaurentPoly::gcd(&p("t^4 - 1"), &p("t^3 - t^2 + t - 1"));
        assert_eq!(g, p("t^3 - t^2 + t - 1"));
        assert!(p("t^5 - 1").is_squarefree());
        assert!(!(p("t - 1").pow(2)).is_squarefree());
        assert_eq!(p("t^2 - 2*t + 1").multiplicity_of(&p("t - 1")), 2);
    }

    #[test]
    fn conjugate_and_eval() {
        assert_eq!(p("t - 2").conjugate().normalize(), p("t - 1/2"));
        assert_eq!(p("t^2 + t^-1").eval(&rat(1, 2)), rat(9, 4));
    }

    #[test]
    fn json_round_trip() {
        let x = p("1/3*t^2 - t^-1");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"-1":"-1","2":"1/3"}"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }
}
