use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{QMatrix, Subspace};
use crate::rational::Rational;
use num_traits::One;

use super::cdga::BifilteredCdga;
use super::thickening::{phi_matrix, psi_matrix, repeat_blocks, thicken_cdga, Direction, ThickenedComplex};

/// One degree of `Gr^W_i A(η, m)`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    /// Indices of the basis elements `b ⊗ s^j` of weight exactly `i`.
    pub coords: Vec<usize>,
    /// Induced differential to the next degree's piece.
    pub differential: QMatrix,
    /// Whether the `η ∧` part of `d_η` vanishes on this piece.
    pub eta_component_vanishes: bool,
    /// Whether the differential equals `⊕_j Gr(d)_{i+2j} ⊗ id`.
    pub matches_formula: bool,
}

fn graded_coords(t: &ThickenedComplex, p: usize, i: i64) -> Vec<usize> {
    let w = t.weight_index(p);
    (0..w.len()).filter(|&k| w[k] == i).collect()
}

/// `Gr^W_i` of the base in degree `p`: local indices of weight exactly `i`.
fn base_graded(a: &BifilteredCdga, p: usize, i: i64) -> Vec<usize> {
    a.range(p).filter(|&b| a.weight(b) == i).map(|b| b - a.offset(p)).collect()
}

pub fn weight_graded(t: &ThickenedComplex, i: i64) -> Vec<GradedPiece> {
    let a = t.base();
    let m = t.m();
    (0..=t.top_degree())
        .map(|p| {
            let rows = graded_coords(t, p + 1, i);
            let cols = graded_coords(t, p, i);
            let differential = t.differential(p).select(&rows, &cols);
            let eta_part = t.differential(p).sub(&repeat_blocks(m, &a.d_matrix(p)));
            let eta_component_vanishes = eta_part.select(&rows, &cols).is_zero();
            let blocks: Vec<QMatrix> = (0..m)
                .map(|j| {
                    let w = i + 2 * j as i64;
                    a.d_matrix(p).select(&base_graded(a, p + 1, w), &base_graded(a, p, w))
                })
                .collect();
            let formula = QMatrix::block_diag(&blocks);
            GradedPiece { degree: p, matches_formula: formula == differential, coords: cols, differential, eta_component_vanishes }
        })
        .collect()
}

/// Both sides of `F^p Gr^W_i A(η, m) = ⊕_j F^{p+j} Gr^W_{i+2j} A ⊗ s^j` in
/// one degree, as subspaces of the graded piece.
#[derive(Clone, Debug)]
pub struct InterplaySides {
    pub degree: usize,
    pub intersect_then_project: Subspace,
    pub direct_sum: Subspace,
}

impl InterplaySides {
    pub fn agree(&self) -> bool {
        self.intersect_then_project == self.direct_sum
    }
}

pub fn hodge_graded_interplay(t: &ThickenedComplex, i: i64, q: i64) -> Result<Vec<InterplaySides>> {
    let a = t.base();
    if !a.has_hodge() {
        return Err(Error::Invalid("the cdga carries no Hodge indices".into()));
    }
    (0..=t.top_degree())
        .map(|p| {
            let coords = graded_coords(t, p, i);
            let n = t.dim(p);
            let mut projection = QMatrix::zeros(coords.len(), n);
            for (r, &k) in coords.iter().enumerate() {
                projection[(r, k)] = Rational::one();
            }
            let fw = t.hodge_filtration(p, q).unwrap().intersect(&t.weight_filtration(p, i));
            let lhs = fw.image(&projection);
            let dim_p = a.dim_in(p);
            let rhs_coords = coords.iter().enumerate().filter_map(|(r, &k)| {
                let (j, b) = (k / dim_p, a.offset(p) + k % dim_p);
                (a.weight(b) == i + 2 * j as i64 && a.hodge(b).unwrap() >= q + j as i64).then_some(r)
            });
            let rhs = Subspace::coordinate(coords.len(), rhs_coords);
            Ok(InterplaySides { degree: p, intersect_then_project: lhs, direct_sum: rhs })
        })
        .collect()
}

/// Checks that the `j`-th summand of `Gr^W_i A(η, m)` carries the Hodge
/// indices of `Gr^W_{i+2j} A` lowered by exactly `j`.
pub fn tate_graded_check(t: &ThickenedComplex, i: i64) -> Result<bool> {
    let a = t.base();
    if !a.has_hodge() {
        return Err(Error::Invalid("the cdga carries no Hodge indices".into()));
    }
    for p in 0..=t.top_degree() {
        let f = t.hodge_index(p).unwrap();
        for j in 0..t.m() {
            for b in base_graded(a, p, i + 2 * j as i64) {
                let k = t.index(p, b, j);
                if t.weight_index(p)[k] != i || f[k] != a.hodge(a.offset(p) + b).unwrap() - j as i64 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `d_η(W_n) ⊆ W_n` and `d_η(F^q) ⊆ F^q` in every degree.
pub fn filtrations_preserved(t: &ThickenedComplex) -> bool {
    for p in 0..t.top_degree() {
        let d = t.differential(p);
        for n in t.weight_range() {
            if !t.weight_filtration(p + 1, n).contains_subspace(&t.weight_filtration(p, n).image(&d)) {
                return false;
            }
        }
        if let Some(range) = t.hodge_range() {
            for q in range {
                if !t.hodge_filtration(p + 1, q).unwrap().contains_subspace(&t.hodge_filtration(p, q).unwrap().image(&d)) {
                    return false;
                }
            }
        }
    }
    true
}

/// `f` maps each filtration step of the source exactly onto the
/// intersection of its image with the step shifted by `shift`.
fn strict_shift(
    f: &QMatrix,
    src: &dyn Fn(i64) -> Subspace,
    tgt: &dyn Fn(i64) -> Subspace,
    range: std::ops::RangeInclusive<i64>,
    shift: i64,
) -> bool {
    let full = Subspace::full(f.cols()).image(f);
    range.into_iter().all(|n| src(n).image(f) == full.intersect(&tgt(n + shift)))
}

fn contained_shift(
    f: &QMatrix,
    src: &dyn Fn(i64) -> Subspace,
    tgt: &dyn Fn(i64) -> Subspace,
    range: std::ops::RangeInclusive<i64>,
    shift: i64,
) -> bool {
    range.into_iter().all(|n| tgt(n + shift).contains_subspace(&src(n).image(f)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureShiftReport {
    pub chain_maps: bool,
    /// `ψ_{ij}` maps `W_n` onto its image in `W_{n-2j}`.
    pub psi_weight: bool,
    /// `ψ_{ij}` maps `F^q` onto its image in `F^{q-j}`.
    pub psi_hodge: bool,
    /// Truncation preserves both filtrations.
    pub phi: bool,
    /// `S_i` is multiplication by `s`, shifting `W` by 2 and `F` by 1.
    pub s: bool,
}

impl StructureShiftReport {
    pub fn ok(&self) -> bool {
        self.chain_maps && self.psi_weight && self.psi_hodge && self.phi && self.s
    }
}

pub fn structure_shift_check(a: &BifilteredCdga, eta: &Direction, i: usize, j: usize) -> Result<StructureShiftReport> {
    if i == 0 {
        return Err(Error::Invalid("structure maps need i >= 1".into()));
    }
    let small = thicken_cdga(a, eta, i)?;
    let large = thicken_cdga(a, eta, i + j)?;
    let mut r = StructureShiftReport { chain_maps: true, psi_weight: true, psi_hodge: true, phi: true, s: true };
    let wr = small.weight_range();
    let wr = *wr.start() - 2 * j as i64..=*large.weight_range().end() + 2 * j as i64;
    let hr = small.hodge_range().map(|h| *h.start() - j as i64..=*h.end() + j as i64);
    for p in 0..=a.top_degree() {
        let n = a.dim_in(p);
        let psi = psi_matrix(n, i, j);
        let phi = phi_matrix(n, i + j, i);
        let s = psi_matrix(n, i - 1, 1).mul(&phi_matrix(n, i, i - 1));
        let (psi1, phi1) = (psi_matrix(a.dim_in(p + 1), i, j), phi_matrix(a.dim_in(p + 1), i + j, i));
        let s1 = psi_matrix(a.dim_in(p + 1), i - 1, 1).mul(&phi_matrix(a.dim_in(p + 1), i, i - 1));
        r.chain_maps &= large.differential(p).mul(&psi) == psi1.mul(&small.differential(p))
            && small.differential(p).mul(&phi) == phi1.mul(&large.differential(p))
            && small.differential(p).mul(&s) == s1.mul(&small.differential(p));
        r.s &= s == small.s_action(p);

        let ws = |k: i64| small.weight_filtration(p, k);
        let wl = |k: i64| large.weight_filtration(p, k);
        r.psi_weight &= strict_shift(&psi, &ws, &wl, wr.clone(), -2 * j as i64);
        r.phi &= contained_shift(&phi, &wl, &ws, wr.clone(), 0);
        r.s &= contained_shift(&s, &ws, &ws, wr.clone(), -2);
        if let Some(hr) = &hr {
            let fs = |k: i64| small.hodge_filtration(p, k).unwrap();
            let fl = |k: i64| large.hodge_filtration(p, k).unwrap();
            r.psi_hodge &= strict_shift(&psi, &fs, &fl, hr.clone(), -(j as i64));
            r.phi &= contained_shift(&phi, &fl, &fs, hr.clone(), 0);
            r.s &= contained_shift(&s, &fs, &fs, hr.clone(), -1);
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn circle(m: usize) -> ThickenedComplex {
        thicken_cdga(&BifilteredCdga::exterior(1, 1), &Direction::from_ints(&[1]), m).unwrap()
    }

    #[test]
    fn weight_zero_piece_of_circle() {
        let t = circle(2);
        assert_eq!(t.weight_filtration(1, 0), Subspace::span(2, &[vec![int(0), int(1)]]));
        let pieces = weight_graded(&t, 0);
        assert_eq!(pieces[0].coords, vec![0]);
        assert!(pieces.iter().all(|g| g.eta_component_vanishes && g.matches_formula));
        assert!(weight_graded(&t, -40).iter().all(|g| g.coords.is_empty()));
    }

    #[test]
    fn interplay_on_circle() {
        let t = circle(2);
        let sides = hodge_graded_interplay(&t, -1, 0).unwrap();
        // degree 1, weight -1: only e ⊗ s, which lies in F^0
        assert_eq!(sides[1].direct_sum.dim(), 1);
        assert!(sides.iter().all(InterplaySides::agree));
        let sides = hodge_graded_interplay(&t, 0, 0).unwrap();
        assert_eq!((sides[0].direct_sum.dim(), sides[1].direct_sum.dim()), (1, 0));
        assert!(sides.iter().all(InterplaySides::agree));
        let high = hodge_graded_interplay(&t, 0, 10).unwrap();
        assert!(high.iter().all(|s| s.agree() && s.direct_sum.dim() == 0));
    }

    #[test]
    fn tate_check_and_negative_control() {
        let mut t = circle(3);
        assert!((-6..=2).all(|i| tate_graded_check(&t, i).unwrap()));
        t.set_hodge_index_unchecked(1, vec![1, 1, 1]);
        assert!(!tate_graded_check(&t, -1).unwrap());
        let plain = BifilteredCdga::from_spec(&super::super::cdga::CdgaSpec {
            hodge: None,
            ..BifilteredCdga::exterior(1, 1).to_spec()
        })
        .unwrap();
        let t = thicken_cdga(&plain, &Direction::from_ints(&[1]), 2).unwrap();
        assert!(tate_graded_check(&t, 0).is_err());
    }

    #[test]
    fn shifts_on_heisenberg() {
        let h = BifilteredCdga::heisenberg(1, 1, 1).unwrap();
        let eta = Direction::from_ints(&[1, 1, 0]);
        let t = thicken_cdga(&h, &eta, 3).unwrap();
        assert!(filtrations_preserved(&t));
        for (i, j) in [(1, 1), (2, 1), (2, 3)] {
            assert!(structure_shift_check(&h, &eta, i, j).unwrap().ok());
        }
    }
}
