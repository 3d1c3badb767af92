use serde::Serialize;

use crate::error::Result;
use crate::qmat::QMatrix;
use crate::rational::Rational;

use super::cdga::BifilteredCdga;
use super::filtrations::{
    filtrations_preserved, hodge_graded_interplay, structure_shift_check, tate_graded_check, weight_graded,
};
use super::thickening::{gauge_isomorphism, thicken_cdga, Direction, ThickenedComplex};

/// Outcome of the exact structural checks on one thickening.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub d_squared_zero: bool,
    pub filtrations_preserved: bool,
    pub gauge_chain_map: bool,
    pub gauge_inverse: bool,
    /// The gauge preserves `W` and `F` and is the identity on `Gr^W`.
    pub gauge_filtered: bool,
    pub gauge_composition: bool,
    pub graded_formula: bool,
    pub eta_vanishes_on_graded: bool,
    pub interplay: bool,
    pub tate: bool,
    pub structure_shifts: bool,
}

impl StructuralReport {
    pub fn all_ok(&self) -> bool {
        self.d_squared_zero
            && self.filtrations_preserved
            && self.gauge_chain_map
            && self.gauge_inverse
            && self.gauge_filtered
            && self.gauge_composition
            && self.graded_formula
            && self.eta_vanishes_on_graded
            && self.interplay
            && self.tate
            && self.structure_shifts
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let checks = [
            ("d_squared_zero", self.d_squared_zero),
            ("filtrations_preserved", self.filtrations_preserved),
            ("gauge_chain_map", self.gauge_chain_map),
            ("gauge_inverse", self.gauge_inverse),
            ("gauge_filtered", self.gauge_filtered),
            ("gauge_composition", self.gauge_composition),
            ("graded_formula", self.graded_formula),
            ("eta_vanishes_on_graded", self.eta_vanishes_on_graded),
            ("interplay", self.interplay),
            ("tate", self.tate),
            ("structure_shifts", self.structure_shifts),
        ];
        checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect()
    }
}

fn shifted_direction(a: &BifilteredCdga, eta: &Direction, witness: &[Rational]) -> Direction {
    let da = a.d_matrix(0).apply(witness);
    Direction::new(eta.coeffs().iter().zip(&da).map(|(x, y)| x - y).collect())
}

fn gauge_is_filtered(t: &ThickenedComplex, forward: &[QMatrix]) -> bool {
    (0..=t.top_degree()).all(|p| {
        let phi = &forward[p];
        let delta = phi.sub(&QMatrix::identity(phi.rows()));
        let weights_ok = t.weight_range().all(|n| {
            let wn = t.weight_filtration(p, n);
            wn.contains_subspace(&wn.image(phi)) && t.weight_filtration(p, n - 1).contains_subspace(&wn.image(&delta))
        });
        let hodge_ok = t.hodge_range().is_none_or(|mut r| {
            r.all(|q| {
                let fq = t.hodge_filtration(p, q).unwrap();
                fq.contains_subspace(&fq.image(phi))
            })
        });
        weights_ok && hodge_ok
    })
}

/// Runs every structural check on `A(η, m)`, with gauge witnesses `a` and
/// `b` in `W_1 ∩ F^1` of degree 0.
pub fn structural_suite(
    a: &BifilteredCdga,
    eta: &Direction,
    witness: &[Rational],
    second_witness: &[Rational],
    m: usize,
) -> Result<StructuralReport> {
    let eta2 = shifted_direction(a, eta, witness);
    let eta3 = shifted_direction(a, &eta2, second_witness);
    let t1 = thicken_cdga(a, eta, m)?;
    let t2 = thicken_cdga(a, &eta2, m)?;
    let top = a.top_degree();
    let mut r = StructuralReport { d_squared_zero: t1.d_squared_is_zero() && t2.d_squared_is_zero(), ..Default::default() };
    r.filtrations_preserved = filtrations_preserved(&t1) && filtrations_preserved(&t2);

    let g = gauge_isomorphism(a, eta, &eta2, witness, m)?;
    r.gauge_chain_map =
        (0..top).all(|p| t2.differential(p).mul(&g.forward[p]) == g.forward[p + 1].mul(&t1.differential(p)));
    r.gauge_inverse = (0..=top).all(|p| g.forward[p].mul(&g.inverse[p]) == QMatrix::identity(t1.dim(p)));
    r.gauge_filtered = gauge_is_filtered(&t1, &g.forward);
    let g2 = gauge_isomorphism(a, &eta2, &eta3, second_witness, m)?;
    let sum: Vec<Rational> = witness.iter().zip(second_witness).map(|(x, y)| x + y).collect();
    let g12 = gauge_isomorphism(a, eta, &eta3, &sum, m)?;
    r.gauge_composition = (0..=top).all(|p| g2.forward[p].mul(&g.forward[p]) == g12.forward[p]);

    let weights: Vec<i64> = t1.weight_range().collect();
    let pieces: Vec<_> = weights.iter().flat_map(|&i| weight_graded(&t1, i)).collect();
    r.graded_formula = pieces.iter().all(|g| g.matches_formula);
    r.eta_vanishes_on_graded = pieces.iter().all(|g| g.eta_component_vanishes);
    match t1.hodge_range() {
        Some(hr) => {
            r.interplay = true;
            r.tate = true;
            for &i in &weights {
                r.tate &= tate_graded_check(&t1, i)?;
                for q in hr.clone() {
                    r.interplay &= hodge_graded_interplay(&t1, i, q)?.iter().all(|s| s.agree());
                }
            }
        }
        None => {
            r.interplay = true;
            r.tate = true;
        }
    }
    r.structure_shifts = true;
    for (i, j) in [(1, 1), (m, 1), (2, m)] {
        r.structure_shifts &= structure_shift_check(a, eta, i, j)?.ok();
    }
    Ok(r)
}
