use crate::laurent::LaurentPoly;

use super::MatrixOverR;

/// `left * A * right = d` with `d` diagonal, normalized and satisfying the
/// divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub d: MatrixOverR,
    pub left: MatrixOverR,
    pub right: MatrixOverR,
}

impl SmithForm {
    /// The `min(rows, cols)` diagonal entries.
    pub fn diagonal(&self) -> Vec<LaurentPoly> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Nonzero, non-unit diagonal entries.
    pub fn torsion_factors(&self) -> Vec<LaurentPoly> {
        self.diagonal().into_iter().filter(|x| !x.is_zero() && !x.is_unit()).collect()
    }
}

fn min_width_entry(a: &MatrixOverR, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in k..a.rows() {
        for j in k..a.cols() {
            if let Some(w) = a[(i, j)].width() {
                if best.is_none_or(|(bw, _, _)| w < bw) {
                    best = Some((w, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form over `R`, pivoting on entries of least width.
pub fn smith_normal_form(a: &MatrixOverR) -> SmithForm {
    let (r, c) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = MatrixOverR::identity(r);
    let mut right = MatrixOverR::identity(c);
    for k in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_width_entry(&d, k) else {
                return SmithForm { d, left, right };
            };
            d.swap_rows(k, pi);
            left.swap_rows(k, pi);
            d.swap_cols(k, pj);
            right.swap_cols(k, pj);

            let piv = d[(k, k)].clone();
            let mut dirty = false;
            for i in k + 1..r {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let (q, rem) = d[(i, k)].div_rem(&piv);
                let q = -q;
                d.add_row_multiple(i, k, &q);
                left.add_row_multiple(i, k, &q);
                dirty |= !rem.is_zero();
            }
            for j in k + 1..c {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let (q, rem) = d[(k, j)].div_rem(&piv);
                let q = -q;
                d.add_col_multiple(j, k, &q);
                right.add_col_multiple(j, k, &q);
                dirty |= !rem.is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (k + 1..r).find(|&i| (k + 1..c).any(|j| !piv.divides(&d[(i, j)])));
            if let Some(i) = bad {
                let one = LaurentPoly::one();
                d.add_row_multiple(k, i, &one);
                left.add_row_multiple(k, i, &one);
                continue;
            }
            break;
        }
        let (unit, _) = d[(k, k)].unit_and_associate();
        let inv = LaurentPoly::monomial(unit.leading_coeff().unwrap().recip(), -unit.low_exp().unwrap());
        d.scale_row(k, &inv);
        left.scale_row(k, &inv);
    }
    SmithForm { d, left, right }
}
