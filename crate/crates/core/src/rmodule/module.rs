use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qmat::QMatrix;

use super::{smith_normal_form, MatrixOverR};

/// A finitely generated `R`-module `R^r ⊕ R/(d_1) ⊕ ... ⊕ R/(d_k)` with
/// normalized non-unit invariant factors `d_1 | d_2 | ... | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgRModule {
    free_rank: usize,
    invariant_factors: Vec<LaurentPoly>,
}

impl FgRModule {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgRModule { free_rank: rank, invariant_factors: Vec::new() }
    }

    /// `R^free_rank ⊕ ⊕ R/(p_i)` for arbitrary `p_i`, brought to invariant
    /// factor form; zero orders become free summands and units are dropped.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[LaurentPoly]) -> Self {
        let zeros = orders.iter().filter(|p| p.is_zero()).count();
        let nonzero: Vec<LaurentPoly> = orders.iter().filter(|p| !p.is_zero()).cloned().collect();
        let n = nonzero.len();
        let snf = smith_normal_form(&MatrixOverR::diagonal(n, n, &nonzero));
        FgRModule { free_rank: free_rank + zeros, invariant_factors: snf.torsion_factors() }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[LaurentPoly] {
        &self.invariant_factors
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Dimension over `Q` of the torsion submodule.
    pub fn torsion_dim(&self) -> usize {
        self.invariant_factors.iter().map(LaurentPoly::degree).sum()
    }

    /// Order of the torsion submodule (product of invariant factors).
    pub fn order(&self) -> LaurentPoly {
        self.invariant_factors.iter().fold(LaurentPoly::one(), |acc, d| acc * d)
    }

    pub fn direct_sum(&self, other: &FgRModule) -> FgRModule {
        let mut orders = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        Self::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Matrix of `t` on the torsion submodule in the basis `1, t, ..., t^(n-1)`
    /// of each cyclic summand.
    pub fn t_action(&self) -> QMatrix {
        QMatrix::block_diag(&self.invariant_factors.iter().map(companion).collect::<Vec<_>>())
    }

    pub(crate) fn require_torsion(&self) -> Result<()> {
        if self.free_rank > 0 {
            return Err(Error::NotTorsion { free_rank: self.free_rank });
        }
        Ok(())
    }
}

/// Companion matrix of the canonical associate of `p`.
pub fn companion(p: &LaurentPoly) -> QMatrix {
    let q = p.normalize();
    let n = q.degree();
    let mut c = QMatrix::zeros(n, n);
    for i in 1..n {
        c[(i, i - 1)] = num_traits::One::one();
    }
    for i in 0..n {
        c[(i, n - 1)] = -q.coeff(i as i64);
    }
    c
}

/// The module `Q^n` with `t` acting by the invertible matrix `a`: invariant
/// factors of `t I - a`.
pub fn module_of_automorphism(a: &QMatrix) -> FgRModule {
    let n = a.rows();
    let mut m = MatrixOverR::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut e = LaurentPoly::constant(-a[(i, j)].clone());
            if i == j {
                e = e + LaurentPoly::t();
            }
            m[(i, j)] = e;
        }
    }
    let snf = smith_normal_form(&m);
    FgRModule { free_rank: 0, invariant_factors: snf.torsion_factors() }
}

pub fn torsion_part(m: &FgRModule) -> FgRModule {
    FgRModule { free_rank: 0, invariant_factors: m.invariant_factors.clone() }
}

/// The module with `t` acting as `t^-1`.
pub fn conjugate(m: &FgRModule) -> FgRModule {
    FgRModule {
        free_rank: m.free_rank,
        invariant_factors: m.invariant_factors.iter().map(|d| d.conjugate().normalize()).collect(),
    }
}

/// Isomorphism class of `Ext^1_R(m, R)`. Free summands contribute nothing, so
/// this is the torsion submodule; the class equals `m` itself when `m` is
/// torsion.
pub fn ext1_dual(m: &FgRModule) -> FgRModule {
    torsion_part(m)
}

/// `Ext^1_R(H_{i-1}, R) ⊕ Hom_R(H_i, R)`.
pub fn uct_cohomology(h_lower: &FgRModule, h_this: &FgRModule) -> FgRModule {
    FgRModule { free_rank: h_this.free_rank, invariant_factors: h_lower.invariant_factors.clone() }
}

/// The same `Q`-vector space as a module over `Q[u^{±1}]` with `u = t^n`.
/// Invariant factors are reported as polynomials in `u`, written with the
/// usual variable.
pub fn restrict_to_rn(m: &FgRModule, n: u64) -> Result<FgRModule> {
    m.require_torsion()?;
    if n == 0 {
        return Err(Error::Invalid("restriction needs N >= 1".into()));
    }
    Ok(module_of_automorphism(&m.t_action().pow(n)))
}

impl fmt::Display for FgRModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "R".to_string() } else { format!("R^{}", self.free_rank) });
        }
        for d in &self.invariant_factors {
            parts.push(format!("R/({d})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    free_rank: usize,
    invariant_factors: Vec<String>,
}

impl Serialize for FgRModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ModuleJson {
            free_rank: self.free_rank,
            invariant_factors: self.invariant_factors.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgRModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ModuleJson::deserialize(d)?;
        let orders = raw
            .invariant_factors
            .iter()
            .map(|s| s.parse::<LaurentPoly>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(FgRModule::from_cyclic_orders(raw.free_rank, &orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn tors(fs: &[&str]) -> FgRModule {
        FgRModule::from_cyclic_orders(0, &fs.iter().map(|s| p(s)).collect::<Vec<_>>())
    }

    #[test]
    fn canonical_form() {
        let m = tors(&["t + 1", "t - 1"]);
        assert_eq!(m.invariant_factors(), &[p("t^2 - 1")]);
        let m = FgRModule::from_cyclic_orders(1, &[p("3*t^-1"), p("0"), p("t^2 - 1"), p("t - 1")]);
        assert_eq!(m.free_rank(), 2);
        assert_eq!(m.invariant_factors(), &[p("t - 1"), p("t^2 - 1")]);
        assert_eq!(m.torsion_dim(), 3);
    }

    #[test]
    fn torsion_and_conjugate() {
        let m = FgRModule::from_cyclic_orders(2, &[p("t - 1")]);
        assert_eq!(torsion_part(&m), tors(&["t - 1"]));
        assert!(torsion_part(&FgRModule::zero()).is_zero());
        assert_eq!(conjugate(&tors(&["t - 2"])), tors(&["t - 1/2"]));
        assert_eq!(conjugate(&tors(&["t^2 + t + 1"])), tors(&["t^2 + t + 1"]));
        assert_eq!(conjugate(&tors(&["t^2 - 2*t + 1"])), tors(&["t^2 - 2*t + 1"]));
    }

    #[test]
    fn ext_and_uct() {
        assert_eq!(ext1_dual(&tors(&["t^2 + t + 1"])), tors(&["t^2 + t + 1"]));
        assert!(ext1_dual(&FgRModule::free(1)).is_zero());
        assert_eq!(ext1_dual(&tors(&["t - 1", "t^2 - 1"])), tors(&["t - 1", "t^2 - 1"]));
        assert_eq!(uct_cohomology(&tors(&["t - 1"]), &FgRModule::zero()), tors(&["t - 1"]));
        assert_eq!(uct_cohomology(&FgRModule::zero(), &FgRModule::free(2)), FgRModule::free(2));
        let lower = FgRModule::from_cyclic_orders(1, &[p("t^2 + t + 1")]);
        assert_eq!(
            uct_cohomology(&lower, &FgRModule::free(1)),
            FgRModule::from_cyclic_orders(1, &[p("t^2 + t + 1")])
        );
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(restrict_to_rn(&tors(&["t^3 - 1"]), 3).unwrap(), tors(&["t - 1", "t - 1", "t - 1"]));
        assert_eq!(restrict_to_rn(&tors(&["t - 1"]), 5).unwrap(), tors(&["t - 1"]));
        assert_eq!(restrict_to_rn(&tors(&["t^2 - 2*t + 1"]), 2).unwrap(), tors(&["t^2 - 2*t + 1"]));
        assert_eq!(
            restrict_to_rn(&FgRModule::free(1), 2),
            Err(Error::NotTorsion { free_rank: 1 })
        );
    }

    #[test]
    fn t_action_char_poly() {
        let m = tors(&["t - 1", "t^3 - 1"]);
        assert_eq!(m.t_action().char_poly(), m.order());
        assert_eq!(module_of_automorphism(&m.t_action()), m);
    }

    #[test]
    fn json_round_trip() {
        let m = FgRModule::from_cyclic_orders(1, &[p("t - 1"), p("t^2 - 1")]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"free_rank":1,"invariant_factors":["t - 1","t^2 - 1"]}"#);
        assert_eq!(serde_json::from_str::<FgRModule>(&s).unwrap(), m);
    }
}
