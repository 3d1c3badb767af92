use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{smith_normal_form, FgRModule, MatrixOverR};

/// A chain complex of finitely generated free `R`-modules
/// `C_hi -> ... -> C_lo`, with `boundary(i): C_i -> C_{i-1}` acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexOverR {
    lo: i64,
    ranks: Vec<usize>,
    boundaries: Vec<MatrixOverR>,
}

impl ComplexOverR {
    /// `boundaries[k]` is the map from degree `lo + k + 1` to `lo + k`.
    pub fn new(lo: i64, ranks: Vec<usize>, boundaries: Vec<MatrixOverR>) -> Result<Self> {
        if ranks.is_empty() || boundaries.len() + 1 != ranks.len() {
            return Err(Error::Invalid("need one boundary map between each pair of degrees".into()));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != ranks[k] || b.cols() != ranks[k + 1] {
                return Err(Error::Invalid(format!("boundary into degree {} has the wrong shape", lo + k as i64)));
            }
        }
        for w in boundaries.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Err(Error::Invalid("consecutive boundary maps do not compose to zero".into()));
            }
        }
        Ok(ComplexOverR { lo, ranks, boundaries })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    /// `C_i -> C_{i-1}`; a zero matrix of the right shape outside the range.
    pub fn boundary(&self, i: i64) -> MatrixOverR {
        if i > self.lo && i <= self.hi() {
            self.boundaries[(i - self.lo - 1) as usize].clone()
        } else {
            MatrixOverR::zeros(self.rank(i - 1), self.rank(i))
        }
    }

    fn check_degree(&self, i: i64) -> Result<()> {
        if i < self.lo || i > self.hi() {
            return Err(Error::DegreeOutOfRange { degree: i, lo: self.lo, hi: self.hi() });
        }
        Ok(())
    }

    /// `H_i` as a free rank plus invariant factors.
    pub fn homology(&self, i: i64) -> Result<FgRModule> {
        self.check_degree(i)?;
        let out = self.boundary(i).rank();
        let incoming = smith_normal_form(&self.boundary(i + 1));
        let free = self.rank(i) - out - incoming.rank();
        Ok(FgRModule::from_cyclic_orders(free, &incoming.torsion_factors()))
    }

    /// `H^i` of `Hom_R(C, R)`, whose coboundaries are the transposed
    /// boundary maps.
    pub fn cohomology(&self, i: i64) -> Result<FgRModule> {
        self.check_degree(i)?;
        let out = self.boundary(i + 1).rank();
        let incoming = smith_normal_form(&self.boundary(i).transpose());
        let free = self.rank(i) - out - incoming.rank();
        Ok(FgRModule::from_cyclic_orders(free, &incoming.torsion_factors()))
    }

    /// Betti numbers of the complex over `Q` with `t` set to `x`.
    pub fn specialized_betti(&self, x: &Rational) -> Vec<usize> {
        (self.lo..=self.hi())
            .map(|i| {
                let out = self.boundary(i).specialize(x).rank();
                let inc = self.boundary(i + 1).specialize(x).rank();
                self.rank(i) - out - inc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn homology_examples() {
        let c = ComplexOverR::new(0, vec![1, 1], vec![MatrixOverR::from_strs(&[&["t - 1"]])]).unwrap();
        assert_eq!(c.homology(0).unwrap(), FgRModule::from_cyclic_orders(0, &[p("t - 1")]));
        assert!(c.homology(1).unwrap().is_zero());

        let c = ComplexOverR::new(0, vec![0, 2], vec![MatrixOverR::zeros(0, 2)]).unwrap();
        assert_eq!(c.homology(1).unwrap(), FgRModule::free(2));

        let c = ComplexOverR::new(0, vec![1, 2], vec![MatrixOverR::from_strs(&[&["t - 1", "t - 1"]])]).unwrap();
        assert_eq!(c.homology(1).unwrap(), FgRModule::free(1));
        assert_eq!(c.homology(0).unwrap(), FgRModule::from_cyclic_orders(0, &[p("t - 1")]));
        assert_eq!(c.homology(2), Err(Error::DegreeOutOfRange { degree: 2, lo: 0, hi: 1 }));
    }

    #[test]
    fn cohomology_matches_uct() {
        let c = ComplexOverR::new(0, vec![1, 1], vec![MatrixOverR::from_strs(&[&["t - 1"]])]).unwrap();
        assert!(c.cohomology(0).unwrap().is_zero());
        assert_eq!(c.cohomology(1).unwrap(), FgRModule::from_cyclic_orders(0, &[p("t - 1")]));
    }

    #[test]
    fn rejects_non_complex() {
        let d1 = MatrixOverR::from_strs(&[&["1"]]);
        let d2 = MatrixOverR::from_strs(&[&["1"]]);
        assert!(ComplexOverR::new(0, vec![1, 1, 1], vec![d1, d2]).is_err());
    }
}

#[cfg(test)]
mod proptests {
    use proptest::prelude::*;

    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::rational::{int, rat};

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (-1i64..=1, prop::collection::vec(-2i64..=2, 1..=3))
            .prop_map(|(low, cs)| LaurentPoly::from_coeffs(low, cs.into_iter().map(int).collect()))
    }

    /// A two-term complex `R^c -> R^r`.
    fn two_term() -> impl Strategy<Value = ComplexOverR> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
            prop::collection::vec(small_poly(), r * c).prop_map(move |es| {
                let d = MatrixOverR::from_rows(es.chunks(c).map(<[LaurentPoly]>::to_vec).collect());
                ComplexOverR::new(0, vec![r, c], vec![d]).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn specialization_sees_free_rank(c in two_term()) {
            let points = [rat(7, 3), rat(-11, 5), rat(13, 17)];
            for i in c.lo()..=c.hi() {
                let h = c.homology(i).unwrap();
                let bettis: Vec<usize> = points
                    .iter()
                    .map(|x| c.specialized_betti(x)[(i - c.lo()) as usize])
                    .collect();
                for &b in &bettis {
                    prop_assert!(b >= h.free_rank());
                }
                let roots_hit = points.iter().any(|x| h.invariant_factors().iter().any(|d| d.eval(x) == int(0)));
                if !roots_hit {
                    prop_assert!(bettis.iter().all(|&b| b == h.free_rank()));
                }
            }
        }

        #[test]
        fn torsion_dim_counts_specialized_jump(c in two_term()) {
            // H_0 = coker d; at a root of the order the Betti number jumps.
            let h = c.homology(0).unwrap();
            let generic = c.specialized_betti(&rat(7, 3))[0];
            prop_assert_eq!(generic, h.free_rank());
        }
    }
}
