use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, TruncatedPoly};
use crate::psi::{max_m_from_env, psi_kernel, stabilize, Level, Stage};
use crate::rmodule::{module_of_automorphism, FgRModule, MatrixOverR};

use super::cdga::BifilteredCdga;
use super::thickening::{psi_matrix, thicken_cdga, Direction};

/// `d + s (η ∧)` from degree `p`, with `s` written as the Laurent variable.
fn polynomial_differential(a: &BifilteredCdga, eta: &Direction, p: usize) -> MatrixOverR {
    let d = a.d_matrix(p);
    let wedge = a.left_mult_matrix(eta.coeffs(), 1, p);
    let mut out = MatrixOverR::zeros(d.rows(), d.cols());
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            out[(i, j)] = LaurentPoly::from_coeffs(0, vec![d[(i, j)].clone(), wedge[(i, j)].clone()]);
        }
    }
    out
}

fn check_degree(a: &BifilteredCdga, degree: usize) -> Result<()> {
    if degree > a.top_degree() {
        return Err(Error::DegreeOutOfRange { degree: degree as i64, lo: 0, hi: a.top_degree() as i64 });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThickeningTorsion {
    pub module: FgRModule,
    /// Truncation order at which the kernel stabilized.
    pub stable_m: usize,
}

/// Torsion of `H^degree A(η, ∞)` as `ker ψ_mm` with doubling `m`; `t` acts
/// as `exp(s)`.
pub fn psi_torsion_of_thickening(a: &BifilteredCdga, eta: &Direction, degree: usize, max_m: usize) -> Result<ThickeningTorsion> {
    check_degree(a, degree)?;
    eta.validate(a)?;
    let n = a.dim_in(degree);
    let rank_in = if degree == 0 { 0 } else { polynomial_differential(a, eta, degree - 1).rank() };
    let free_rank = n - rank_in - polynomial_differential(a, eta, degree).rank();
    let stage = |m: usize| -> Result<Stage> {
        let t = thicken_cdga(a, eta, m)?;
        let t2 = thicken_cdga(a, eta, 2 * m)?;
        let level = Level { d_in: t.differential_into(degree), d_out: t.differential(degree), t: t.t_action(degree) };
        let (kernel_dim, t_on_kernel) = psi_kernel(&level, &t2.differential_into(degree), &psi_matrix(n, m, m));
        Ok(Stage {
            m,
            excess: level.cohomology_dim() as i64 - (free_rank * m) as i64,
            kernel_dim,
            char_poly: t_on_kernel.char_poly(),
            t_on_kernel,
        })
    };
    let st = stabilize(max_m, stage)?;
    Ok(ThickeningTorsion { module: module_of_automorphism(&st.t_on_kernel), stable_m: st.m })
}

/// Valuations of the Smith form of a matrix over `Q[[s]]/(s^order)`; entries
/// that vanish to this order are omitted.
fn local_smith_valuations(a: &MatrixOverR, order: usize) -> Vec<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<TruncatedPoly>> = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let p = &a[(i, j)];
                    TruncatedPoly::from_coeffs(order, (0..order as i64).map(|k| p.coeff(k)).collect())
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for k in 0..rows.min(cols) {
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .filter_map(|(i, j)| m[i][j].valuation().map(|v| (v, i, j)))
            .min();
        let Some((v, pi, pj)) = pivot else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let unit_inv = m[k][k].shift_down(v).and_then(|u| u.inverse()).expect("pivot has its minimal valuation");
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k].shift_down(v).expect("pivot valuation is minimal") * &unit_inv;
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(k) {
                *x = &*x - &(&f * p);
            }
        }
        for j in k + 1..cols {
            if m[k][j].is_zero() {
                continue;
            }
            let f = &m[k][j].shift_down(v).expect("pivot valuation is minimal") * &unit_inv;
            let sub = &f * &m[k][k];
            m[k][j] = &m[k][j] - &sub;
        }
        out.push(v);
    }
    out
}

/// Torsion of the cokernel of `d + s η` into `degree`, from a Smith form
/// over `Q[[s]]` truncated at order `1 + dim A`.
pub fn oracle_torsion(a: &BifilteredCdga, eta: &Direction, degree: usize) -> Result<FgRModule> {
    check_degree(a, degree)?;
    eta.validate(a)?;
    if degree == 0 {
        return Ok(FgRModule::zero());
    }
    let order = 1 + a.dim();
    let t_minus_1 = LaurentPoly::t() - LaurentPoly::one();
    let orders: Vec<LaurentPoly> = local_smith_valuations(&polynomial_differential(a, eta, degree - 1), order)
        .into_iter()
        .filter(|&v| v > 0)
        .map(|v| t_minus_1.pow(v as u32))
        .collect();
    Ok(FgRModule::from_cyclic_orders(0, &orders))
}

/// Torsion of `H^degree A(η, ∞)`, computed from `ψ`-kernels and confirmed
/// against the Smith-form oracle.
pub fn torsion_of_thickening(a: &BifilteredCdga, eta: &Direction, degree: usize) -> Result<FgRModule> {
    let psi = psi_torsion_of_thickening(a, eta, degree, max_m_from_env())?.module;
    let oracle = oracle_torsion(a, eta, degree)?;
    if psi != oracle {
        return Err(Error::OracleMismatch(format!("psi-kernel gives {psi}, Smith form gives {oracle}")));
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn circle() {
        let a = BifilteredCdga::exterior(1, 1);
        let eta = Direction::from_ints(&[1]);
        let h1 = torsion_of_thickening(&a, &eta, 1).unwrap();
        assert_eq!(h1, FgRModule::from_cyclic_orders(0, &[p("t - 1")]));
        assert_eq!(h1.torsion_dim(), 1);
        assert!(torsion_of_thickening(&a, &eta, 0).unwrap().is_zero());
        assert_eq!(
            torsion_of_thickening(&a, &eta, 2).unwrap_err(),
            Error::DegreeOutOfRange { degree: 2, lo: 0, hi: 1 }
        );
    }

    #[test]
    fn heisenberg_has_jordan_block() {
        let h = BifilteredCdga::heisenberg(1, 1, 1).unwrap();
        let eta = Direction::from_ints(&[1, 0, 0]);
        for k in 0..=3 {
            let psi = psi_torsion_of_thickening(&h, &eta, k, 64).unwrap().module;
            assert_eq!(psi, oracle_torsion(&h, &eta, k).unwrap(), "degree {k}");
        }
    }

    #[test]
    fn zero_direction_has_no_torsion() {
        let h = BifilteredCdga::heisenberg(1, 1, 1).unwrap();
        let eta = Direction::from_ints(&[0, 0, 0]);
        for k in 0..=3 {
            assert!(torsion_of_thickening(&h, &eta, k).unwrap().is_zero());
        }
    }

    #[test]
    fn local_smith_of_jordan_shape() {
        // [[s, 1], [0, s]] has Smith form diag(1, s^2)
        let m = MatrixOverR::from_strs(&[&["t", "1"], &["0", "t"]]);
        assert_eq!(local_smith_valuations(&m, 5), vec![0, 2]);
        assert_eq!(local_smith_valuations(&MatrixOverR::zeros(2, 2), 5), Vec::<usize>::new());
    }
}
