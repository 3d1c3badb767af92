//! Numeric checks on torsion modules: eigenvalues, Jordan blocks,
//! semisimplicity, eigen-splitting and weight windows.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{cyclotomic, cyclotomic_factor, unit_log_series, LaurentPoly};
use crate::qmat::QMatrix;
use crate::rmodule::FgRModule;

fn as_string<S: Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn as_opt_string<S: Serializer>(p: &Option<LaurentPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        Some(p) => s.serialize_some(&p.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootsOfUnityReport {
    pub ok: bool,
    /// The non-cyclotomic part of the first invariant factor that has one.
    #[serde(serialize_with = "as_opt_string")]
    pub offending: Option<LaurentPoly>,
}

pub fn roots_of_unity_check(m: &FgRModule) -> RootsOfUnityReport {
    let offending = m
        .invariant_factors()
        .iter()
        .map(|d| cyclotomic_factor(d).expect("invariant factors are nonzero").remainder)
        .find(|r| !r.is_unit());
    RootsOfUnityReport { ok: offending.is_none(), offending }
}

/// Block sizes for the roots of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanEntry {
    /// `Φ_n` for cyclotomic factors; otherwise a squarefree product of
    /// non-cyclotomic irreducibles sharing the same block sizes.
    #[serde(serialize_with = "as_string")]
    pub factor: LaurentPoly,
    pub cyclotomic_index: Option<u64>,
    /// Sizes in decreasing order, one per invariant factor containing it.
    pub blocks: Vec<usize>,
}

/// Splits a list of polynomials into pairwise coprime squarefree pieces.
fn coprime_base(polys: &[LaurentPoly]) -> Vec<LaurentPoly> {
    let mut base: Vec<LaurentPoly> = Vec::new();
    let mut pending: Vec<LaurentPoly> = polys.iter().filter(|p| !p.is_unit()).map(LaurentPoly::normalize).collect();
    while let Some(p) = pending.pop() {
        let g = LaurentPoly::gcd(&p, &p.associate_derivative());
        if !g.is_unit() {
            pending.push(g.clone());
            pending.push(p.exact_div(&g).expect("gcd divides").normalize());
            continue;
        }
        match base.iter().position(|b| !LaurentPoly::gcd(b, &p).is_unit()) {
            None => base.push(p),
            Some(k) => {
                let b = base.remove(k);
                let g = LaurentPoly::gcd(&b, &p);
                for q in [b.exact_div(&g).unwrap(), p.exact_div(&g).unwrap(), g] {
                    if !q.is_unit() {
                        pending.push(q.normalize());
                    }
                }
            }
        }
    }
    base.sort();
    base
}

pub fn jordan_profile(m: &FgRModule) -> Result<Vec<JordanEntry>> {
    m.require_torsion()?;
    let mut entries: Vec<JordanEntry> = Vec::new();
    let mut remainders = Vec::new();
    let mut indices: Vec<u64> = Vec::new();
    for d in m.invariant_factors() {
        let f = cyclotomic_factor(d)?;
        indices.extend(f.factors.iter().map(|&(n, _)| n));
        remainders.push(f.remainder);
    }
    indices.sort_unstable();
    indices.dedup();
    let blocks_of = |p: &LaurentPoly| {
        let mut blocks: Vec<usize> =
            m.invariant_factors().iter().map(|d| d.multiplicity_of(p)).filter(|&e| e > 0).collect();
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        blocks
    };
    for n in indices {
        let phi = cyclotomic(n);
        entries.push(JordanEntry { blocks: blocks_of(&phi), factor: phi, cyclotomic_index: Some(n) });
    }
    for b in coprime_base(&remainders) {
        entries.push(JordanEntry { blocks: blocks_of(&b), factor: b, cyclotomic_index: None });
    }
    Ok(entries)
}

/// `min{⌈(i+1)/2⌉, n - ⌊(i+1)/2⌋}`.
pub fn jordan_bound(i: usize, n: usize) -> usize {
    (i + 1).div_ceil(2).min(n.saturating_sub(i.div_ceil(2)))
}

pub fn jordan_bound_check(m: &FgRModule, i: usize, n: usize) -> Result<bool> {
    let bound = jordan_bound(i, n);
    Ok(jordan_profile(m)?.iter().all(|e| e.blocks.iter().all(|&b| b <= bound)))
}

pub fn semisimplicity_check(m: &FgRModule) -> Result<bool> {
    m.require_torsion()?;
    Ok(m.invariant_factors().iter().all(LaurentPoly::is_squarefree))
}

/// `(M_1, M_{≠1})`: the `(t-1)`-primary part and its complement.
pub fn eigen_split(m: &FgRModule) -> Result<(FgRModule, FgRModule)> {
    m.require_torsion()?;
    if !semisimplicity_check(m)? || !roots_of_unity_check(m).ok {
        return Err(Error::NotSemisimpleOrNotUnityPowerTorsion);
    }
    let t1 = LaurentPoly::t() - LaurentPoly::one();
    let (mut ones, mut rest) = (Vec::new(), Vec::new());
    for d in m.invariant_factors() {
        let k = d.multiplicity_of(&t1);
        let p = t1.pow(k as u32);
        rest.push(d.exact_div(&p).expect("(t-1)^k divides"));
        ones.push(p);
    }
    Ok((FgRModule::from_cyclic_orders(0, &ones), FgRModule::from_cyclic_orders(0, &rest)))
}

/// Least `N` such that `t^N` acts unipotently.
pub fn unipotent_order(m: &FgRModule) -> Result<u64> {
    m.require_torsion()?;
    let r = roots_of_unity_check(m);
    if let Some(p) = r.offending {
        return Err(Error::NotRootsOfUnity(p.to_string()));
    }
    let mut n = 1u64;
    for d in m.invariant_factors() {
        for (k, _) in cyclotomic_factor(d)?.factors {
            n = num_integer::Integer::lcm(&n, &k);
        }
    }
    Ok(n)
}

/// The interval `[i, min(2i, 2n - 2)]` of weights that can occur in `H^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightWindow {
    pub lo: i64,
    pub hi: i64,
}

impl WeightWindow {
    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, w: i64) -> bool {
        self.lo <= w && w <= self.hi
    }
}

pub fn weight_window(i: usize, n: usize) -> Result<WeightWindow> {
    if n == 0 {
        return Err(Error::Invalid("weight window needs n >= 1".into()));
    }
    let (i, n) = (i as i64, n as i64);
    Ok(WeightWindow { lo: i, hi: (2 * i).min(2 * n - 2) })
}

fn nilpotency_order(x: &QMatrix) -> usize {
    let mut p = QMatrix::identity(x.rows());
    for k in 0..=x.rows() {
        if p.is_zero() {
            return k;
        }
        p = p.mul(x);
    }
    usize::MAX
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LogUnitReport {
    /// Least `k` with `(t - 1)^k = 0`.
    pub t_minus_one: usize,
    /// Least `k` with `log(t)^k = 0`.
    pub log_t: usize,
    pub ok: bool,
}

/// Compares the nilpotency orders of `t - 1` and `log t` on a unipotent
/// module.
pub fn log_unit_check(m: &FgRModule) -> Result<LogUnitReport> {
    if unipotent_order(m)? != 1 {
        return Err(Error::Invalid("module is not unipotent".into()));
    }
    let t = m.t_action();
    let n = t.rows();
    let x = t.sub(&QMatrix::identity(n));
    let series = unit_log_series(n + 1);
    let mut log = QMatrix::zeros(n, n);
    let mut pow = QMatrix::identity(n);
    for k in 0..=n {
        log = log.add(&pow.scale(series.coeff(k)));
        pow = pow.mul(&x);
    }
    let (a, b) = (nilpotency_order(&x), nilpotency_order(&log));
    Ok(LogUnitReport { t_minus_one: a, log_t: b, ok: a == b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn module(orders: &[&str]) -> FgRModule {
        FgRModule::from_cyclic_orders(0, &orders.iter().map(|s| p(s)).collect::<Vec<_>>())
    }

    #[test]
    fn roots_of_unity() {
        assert!(roots_of_unity_check(&module(&["t^2 + t + 1"])).ok);
        let r = roots_of_unity_check(&module(&["t - 2"]));
        assert_eq!((r.ok, r.offending), (false, Some(p("t - 2"))));
        let c4 = p("t^4 - 1").pow(2) * p("t - 1");
        assert!(roots_of_unity_check(&FgRModule::from_cyclic_orders(0, &[c4])).ok);
    }

    #[test]
    fn profiles() {
        let prof = jordan_profile(&module(&["t^2 - 2*t + 1", "t - 1"])).unwrap();
        assert_eq!(prof.len(), 1);
        assert_eq!((prof[0].cyclotomic_index, prof[0].blocks.clone()), (Some(1), vec![2, 1]));

        let prof = jordan_profile(&module(&["t^2 - 1"])).unwrap();
        assert_eq!(prof.iter().map(|e| (e.cyclotomic_index, e.blocks.clone())).collect::<Vec<_>>(), vec![
            (Some(1), vec![1]),
            (Some(2), vec![1])
        ]);

        let prof = jordan_profile(&module(&["t - 1", "t^3 - 1"])).unwrap();
        assert_eq!(prof.iter().map(|e| (e.cyclotomic_index, e.blocks.clone())).collect::<Vec<_>>(), vec![
            (Some(1), vec![1, 1]),
            (Some(3), vec![1])
        ]);
        // a cyclic module of the same order has one block of size 2
        let prof = jordan_profile(&module(&["t^4 - t^3 - t + 1"])).unwrap();
        assert_eq!(prof[0].blocks, vec![2]);

        let prof = jordan_profile(&module(&["t^2 - 4*t + 4", "t^2 - 5*t + 6"])).unwrap();
        assert_eq!(prof.len(), 2);
        assert!(prof.iter().all(|e| e.cyclotomic_index.is_none()));
        assert!(matches!(jordan_profile(&FgRModule::free(1)), Err(Error::NotTorsion { .. })));
    }

    #[test]
    fn jordan_bounds() {
        assert_eq!(jordan_bound(1, 2), 1);
        assert_eq!(jordan_bound(2, 2), 1);
        assert_eq!(jordan_bound(3, 4), 2);
        assert_eq!(jordan_bound(1, 5), 1);
        assert_eq!(jordan_bound(4, 9), 3);
        assert!(!jordan_bound_check(&module(&["t^2 - 2*t + 1"]), 1, 2).unwrap());
        assert!(jordan_bound_check(&module(&["t^2 + t + 1"]), 1, 2).unwrap());
    }

    #[test]
    fn semisimplicity() {
        assert!(semisimplicity_check(&module(&["t^2 - 1"])).unwrap());
        assert!(!semisimplicity_check(&module(&["t^2 - 2*t + 1"])).unwrap());
        assert!(semisimplicity_check(&module(&["t^5 - 1", "t^5 - 1", "t^5 - 1", "t - 1"])).unwrap());
    }

    #[test]
    fn splitting() {
        let (a, b) = eigen_split(&module(&["t^3 - 1"])).unwrap();
        assert_eq!((a, b), (module(&["t - 1"]), module(&["t^2 + t + 1"])));
        let (a, b) = eigen_split(&module(&["t - 1"])).unwrap();
        assert_eq!((a, b.is_zero()), (module(&["t - 1"]), true));
        let delta = module(&["t - 1", "t - 1", "t - 1", "t^3 - 1"]);
        let (a, b) = eigen_split(&delta).unwrap();
        assert_eq!((a.torsion_dim(), b.torsion_dim()), (4, 2));
        assert_eq!(eigen_split(&module(&["t^2 - 2*t + 1"])).unwrap_err(), Error::NotSemisimpleOrNotUnityPowerTorsion);
        assert_eq!(eigen_split(&module(&["t - 3"])).unwrap_err(), Error::NotSemisimpleOrNotUnityPowerTorsion);
    }

    #[test]
    fn unipotent_orders() {
        assert_eq!(unipotent_order(&module(&["t^2 + t + 1"])).unwrap(), 3);
        assert_eq!(unipotent_order(&module(&["t^3 - 3*t^2 + 3*t - 1"])).unwrap(), 1);
        assert_eq!(unipotent_order(&module(&["t - 1", "t^5 - 1"])).unwrap(), 5);
        assert!(matches!(unipotent_order(&module(&["t - 2"])), Err(Error::NotRootsOfUnity(_))));
    }

    #[test]
    fn windows() {
        assert_eq!(weight_window(1, 2).unwrap(), WeightWindow { lo: 1, hi: 2 });
        assert_eq!(weight_window(0, 5).unwrap(), WeightWindow { lo: 0, hi: 0 });
        assert!(weight_window(3, 2).unwrap().is_empty());
    }

    #[test]
    fn log_unit() {
        let r = log_unit_check(&module(&["t^3 - 3*t^2 + 3*t - 1", "t - 1"])).unwrap();
        assert_eq!((r.t_minus_one, r.log_t, r.ok), (3, 3, true));
    }

    proptest! {
        #[test]
        fn split_reassembles(a in 0usize..3, b in 0usize..3, c in 0usize..3) {
            let mut orders = Vec::new();
            for (n, k) in [(1u64, a), (3, b), (4, c)] {
                for _ in 0..k {
                    orders.push(LaurentPoly::t_pow_minus_one(n));
                }
            }
            let m = FgRModule::from_cyclic_orders(0, &orders);
            let (x, y) = eigen_split(&m).unwrap();
            prop_assert_eq!(x.direct_sum(&y), m.clone());
            prop_assert_eq!(unipotent_order(&m).unwrap() == 1, y.is_zero());
            prop_assert_eq!(jordan_bound_check(&m, 1, 2).unwrap(), semisimplicity_check(&m).unwrap());
        }
    }
}
