use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{cyclotomic_factor, truncate, LaurentPoly, TruncatedPoly};
use crate::psi::{max_m_from_env, psi_kernel, stabilize, Level, Stage};
use crate::qmat::QMatrix;
use crate::rational::Rational;
use crate::rmodule::{conjugate, module_of_automorphism, FgRModule, MatrixOverR};

use super::{alexander_homology, PresentationComplex};

/// `Hom_R(C_•, R_m)` with the conjugate twist: `δ^i` is `∂_{i+1}` transposed
/// with every `t^k` replaced by the image of `t^-k` in `R_m`.
#[derive(Clone, Debug)]
pub struct RmCochainComplex {
    pub m: usize,
    pub ranks: Vec<usize>,
    /// `coboundaries[i]` maps degree `i` to `i + 1`, indexed `[row][col]`.
    pub coboundaries: Vec<Vec<Vec<TruncatedPoly>>>,
}

pub fn rm_cochain_complex(pc: &PresentationComplex, m: usize) -> RmCochainComplex {
    assert!(m >= 1, "truncation order must be positive");
    let c = &pc.complex;
    let ranks: Vec<usize> = (0..=2).map(|i| c.rank(i)).collect();
    let coboundaries = (0..2)
        .map(|i| {
            let d = c.boundary(i + 1).conjugate().transpose();
            (0..d.rows()).map(|r| (0..d.cols()).map(|k| truncate(&d[(r, k)], m)).collect()).collect()
        })
        .collect();
    RmCochainComplex { m, ranks, coboundaries }
}

/// Multiplication by `a` on `R_m` in the basis `1, s, ..., s^(m-1)`.
pub(crate) fn truncated_mult_matrix(a: &TruncatedPoly) -> QMatrix {
    let m = a.m();
    let mut out = QMatrix::zeros(m, m);
    for j in 0..m {
        for i in 0..m - j {
            out[(i + j, j)] = a.coeff(i).clone();
        }
    }
    out
}

fn block_matrix(rows: usize, cols: usize, block: usize, entry: impl Fn(usize, usize) -> QMatrix) -> QMatrix {
    let mut out = QMatrix::zeros(rows * block, cols * block);
    for r in 0..rows {
        for c in 0..cols {
            let b = entry(r, c);
            for i in 0..block {
                for j in 0..block {
                    if !b[(i, j)].is_zero() {
                        out[(r * block + i, c * block + j)] = b[(i, j)].clone();
                    }
                }
            }
        }
    }
    out
}

impl RmCochainComplex {
    /// `δ^i` as a `Q`-matrix on coordinates `component * m + power_of_s`;
    /// zero maps outside degrees `0..=1`.
    pub fn flat_coboundary(&self, i: i64) -> QMatrix {
        let rank = |k: i64| if (0..=2).contains(&k) { self.ranks[k as usize] } else { 0 };
        if !(0..=1).contains(&i) {
            return QMatrix::zeros(rank(i + 1) * self.m, rank(i) * self.m);
        }
        let d = &self.coboundaries[i as usize];
        block_matrix(rank(i + 1), rank(i), self.m, |r, c| truncated_mult_matrix(&d[r][c]))
    }

    /// `dim_Q H^i(U; conj(L) ⊗ R_m)`.
    pub fn cohomology_dim(&self, i: i64) -> usize {
        let n = if (0..=2).contains(&i) { self.ranks[i as usize] * self.m } else { 0 };
        n - self.flat_coboundary(i).rank() - self.flat_coboundary(i - 1).rank()
    }
}

/// The ring `Q[t]/(G)`, `G = (t^N - 1)^m`, in the basis `1, t, ..., t^(Nm-1)`.
/// For `N = 1` this is `R_m`.
#[derive(Clone, Debug)]
pub struct CoverQuotient {
    n: u64,
    m: usize,
    /// Coefficients of `G`, lowest first; monic of degree `N m`.
    modulus: Vec<Rational>,
    t_inv: Vec<Rational>,
}

impl CoverQuotient {
    pub fn new(n: u64, m: usize) -> Self {
        assert!(n >= 1 && m >= 1);
        let g = LaurentPoly::t_pow_minus_one(n).pow(m as u32);
        let modulus: Vec<Rational> = (0..=g.high_exp().unwrap()).map(|k| g.coeff(k)).collect();
        let g0 = modulus[0].clone();
        // t^-1 = -(G - G(0)) / (t G(0))
        let t_inv = modulus[1..].iter().map(|c| -c / &g0).collect();
        CoverQuotient { n, m, modulus, t_inv }
    }

    pub fn dim(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        let d = self.dim();
        for k in (d..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = v[k].clone();
            for (i, g) in self.modulus.iter().enumerate() {
                v[k - d + i] -= &c * g;
            }
        }
        v.resize(d, Rational::zero());
        v
    }

    fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    /// Image of a Laurent polynomial.
    pub fn image(&self, p: &LaurentPoly) -> Vec<Rational> {
        if p.is_zero() {
            return vec![Rational::zero(); self.dim()];
        }
        let low = p.low_exp().unwrap();
        let shift = low.min(0);
        let dense: Vec<Rational> = (shift..=p.high_exp().unwrap()).map(|k| p.coeff(k)).collect();
        let mut acc = self.reduce(dense);
        for _ in 0..(-shift) {
            acc = self.mul(&acc, &self.t_inv);
        }
        acc
    }

    pub fn mult_matrix(&self, p: &LaurentPoly) -> QMatrix {
        let d = self.dim();
        let base = self.image(p);
        let mut out = QMatrix::zeros(d, d);
        let mut col = base;
        for j in 0..d {
            for (i, x) in col.iter().enumerate() {
                out[(i, j)] = x.clone();
            }
            if j + 1 < d {
                let mut shifted = vec![Rational::zero()];
                shifted.extend(col);
                col = self.reduce(shifted);
            }
        }
        out
    }

    /// `ψ`: multiplication by `(t^N - 1)^m` into the ring of order `2m`.
    pub fn psi_into_double(&self) -> QMatrix {
        let target = CoverQuotient::new(self.n, 2 * self.m);
        let g = LaurentPoly::t_pow_minus_one(self.n).pow(self.m as u32);
        let mut out = QMatrix::zeros(target.dim(), self.dim());
        for j in 0..self.dim() {
            let img = target.image(&g.shift(j as i64));
            for (i, x) in img.into_iter().enumerate() {
                out[(i, j)] = x;
            }
        }
        out
    }

    /// A matrix over `R` acting on `ranks` copies of the ring, flattened.
    pub fn flatten(&self, a: &MatrixOverR) -> QMatrix {
        block_matrix(a.rows(), a.cols(), self.dim(), |r, c| self.mult_matrix(&a[(r, c)]))
    }
}

/// Which cyclic cover the `ψ`-kernel is computed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverChoice {
    /// `N` = unipotent order of the cyclotomic part of the expected torsion.
    Auto,
    Fixed(u64),
}

#[derive(Clone, Copy, Debug)]
pub struct PsiOptions {
    pub cover: CoverChoice,
    pub max_m: usize,
}

impl Default for PsiOptions {
    fn default() -> Self {
        PsiOptions { cover: CoverChoice::Auto, max_m: 64 }
    }
}

impl PsiOptions {
    pub fn from_env() -> Self {
        PsiOptions { max_m: max_m_from_env(), ..Self::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiTorsion {
    pub module: FgRModule,
    /// Cover order `N` used: `ψ` thickens along `t^N - 1`.
    pub cover_order: u64,
    /// Truncation order at which the kernel stabilized.
    pub stable_m: usize,
    /// Torsion that no cyclic cover can reach (eigenvalues that are not
    /// roots of unity), as an order; `1` when everything was reached.
    pub unreached: LaurentPoly,
}

fn lcm(a: u64, b: u64) -> u64 {
    num_integer::Integer::lcm(&a, &b)
}

/// The cover order that makes the cyclotomic part of `order` unipotent, and
/// the non-cyclotomic remainder.
fn cover_for(order: &LaurentPoly) -> (u64, LaurentPoly) {
    let f = cyclotomic_factor(order).expect("torsion orders are nonzero");
    (f.factors.iter().fold(1, |acc, &(n, _)| lcm(acc, n)), f.remainder)
}

/// Conjugate cohomology cochains `δ^i = conj(∂_{i+1})^T` over `R`.
fn cochain_over_r(pc: &PresentationComplex, i: i64) -> MatrixOverR {
    let c = &pc.complex;
    if !(0..=1).contains(&i) {
        return MatrixOverR::zeros(c.rank(i + 1), c.rank(i));
    }
    c.boundary(i + 1).conjugate().transpose()
}

/// Torsion of the conjugate cohomology Alexander module in `degree`, as
/// `ker ψ_mm` with doubling `m`.
pub fn torsion_via_psi(pc: &PresentationComplex, degree: i64) -> Result<FgRModule> {
    Ok(torsion_via_psi_with(pc, degree, &PsiOptions::default())?.module)
}

pub fn torsion_via_psi_with(pc: &PresentationComplex, degree: i64, opts: &PsiOptions) -> Result<PsiTorsion> {
    if !(0..=2).contains(&degree) {
        return Err(Error::DegreeOutOfRange { degree, lo: 0, hi: 2 });
    }
    let expected_order = if degree == 0 {
        LaurentPoly::one()
    } else {
        conjugate(&alexander_homology(pc, degree - 1)?).order()
    };
    let (auto_n, remainder) = cover_for(&expected_order);
    let n = match opts.cover {
        CoverChoice::Auto => auto_n,
        CoverChoice::Fixed(n) if n >= 1 => n,
        CoverChoice::Fixed(_) => return Err(Error::Invalid("cover order must be positive".into())),
    };
    let d_in_r = cochain_over_r(pc, degree - 1);
    let d_out_r = cochain_over_r(pc, degree);
    let rank_here = pc.complex.rank(degree);
    let free_rank = rank_here - d_in_r.rank() - d_out_r.rank();

    let level = |m: usize| {
        let q = CoverQuotient::new(n, m);
        let t = QMatrix::block_diag(&vec![q.mult_matrix(&LaurentPoly::t()); rank_here]);
        (q.clone(), Level { d_in: q.flatten(&d_in_r), d_out: q.flatten(&d_out_r), t })
    };
    let stage = |m: usize| -> Result<Stage> {
        let (q, lv) = level(m);
        let q2 = CoverQuotient::new(n, 2 * m);
        let psi = QMatrix::block_diag(&vec![q.psi_into_double(); rank_here]);
        let (kernel_dim, t_on_kernel) = psi_kernel(&lv, &q2.flatten(&d_in_r), &psi);
        let h_dim = lv.cohomology_dim();
        Ok(Stage {
            m,
            excess: h_dim as i64 - (free_rank as u64 * n * m as u64) as i64,
            kernel_dim,
            char_poly: t_on_kernel.char_poly(),
            t_on_kernel,
        })
    };
    let st = stabilize(opts.max_m, stage)?;
    let unreached = if opts.cover == CoverChoice::Auto { remainder } else { LaurentPoly::one() };
    Ok(PsiTorsion { module: module_of_automorphism(&st.t_on_kernel), cover_order: n, stable_m: st.m, unreached })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localsys::{presentation_complex, Epimorphism, GroupPresentation};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn pc(gens: usize, rels: Vec<Vec<i64>>, eps: Vec<i64>) -> PresentationComplex {
        presentation_complex(&GroupPresentation { generators: gens, relators: rels }, &Epimorphism { images: eps }).unwrap()
    }

    fn circle() -> PresentationComplex {
        pc(1, vec![], vec![1])
    }

    fn trefoil() -> PresentationComplex {
        pc(2, vec![vec![1, 2, 1, -2, -1, -2]], vec![1, 1])
    }

    #[test]
    fn circle_cochains() {
        let c = rm_cochain_complex(&circle(), 2);
        assert_eq!(c.cohomology_dim(0), 1);
        assert_eq!(c.cohomology_dim(1), 1);
        let c = rm_cochain_complex(&circle(), 1);
        assert_eq!(c.cohomology_dim(0), 1);
        assert_eq!(c.cohomology_dim(1), 1);
    }

    #[test]
    fn trefoil_untwisted() {
        let c = rm_cochain_complex(&trefoil(), 1);
        assert_eq!(c.cohomology_dim(1), 1);
    }

    #[test]
    fn cover_quotient_inverse() {
        for (n, m) in [(1, 3), (3, 2), (6, 1)] {
            let q = CoverQuotient::new(n, m);
            let t = q.mult_matrix(&LaurentPoly::t());
            let ti = q.mult_matrix(&LaurentPoly::t_pow(-1));
            assert_eq!(t.mul(&ti), QMatrix::identity(q.dim()));
            assert!(q.mult_matrix(&LaurentPoly::t_pow_minus_one(n).pow(m as u32)).is_zero());
        }
    }

    #[test]
    fn r_m_matches_cover_one() {
        let c = rm_cochain_complex(&trefoil(), 3);
        let q = CoverQuotient::new(1, 3);
        let flat = q.flatten(&cochain_over_r(&trefoil(), 0));
        assert_eq!(flat.rank(), c.flat_coboundary(0).rank());
    }

    #[test]
    fn psi_examples() {
        let one = |s: &str| FgRModule::from_cyclic_orders(0, &[p(s)]);
        assert_eq!(torsion_via_psi(&circle(), 1).unwrap(), one("t - 1"));
        assert!(torsion_via_psi(&circle(), 0).unwrap().is_zero());
        assert_eq!(torsion_via_psi(&trefoil(), 2).unwrap(), one("t^2 - t + 1"));
        assert_eq!(torsion_via_psi(&trefoil(), 3), Err(Error::DegreeOutOfRange { degree: 3, lo: 0, hi: 2 }));
    }

    #[test]
    fn psi_on_plain_r_m_sees_only_unipotent_part() {
        let opts = PsiOptions { cover: CoverChoice::Fixed(1), max_m: 64 };
        let r = torsion_via_psi_with(&trefoil(), 2, &opts).unwrap();
        assert!(r.module.is_zero());
    }

    #[test]
    fn cap_is_reported() {
        let opts = PsiOptions { cover: CoverChoice::Auto, max_m: 1 };
        assert_eq!(torsion_via_psi_with(&circle(), 1, &opts).unwrap_err(), Error::NoStabilization { cap: 1 });
    }

    #[test]
    fn unipotent_jordan_block() {
        // x^2 y x^-2 (x y^-1 x^-1)^2 y: Fox derivative in y is (t - 1)^2.
        let c = pc(2, vec![vec![1, 1, 2, -1, -1, 1, -2, -1, 1, -2, -1, 2]], vec![1, 0]);
        let h1 = alexander_homology(&c, 1).unwrap();
        assert_eq!(h1, FgRModule::from_cyclic_orders(0, &[p("t^2 - 2*t + 1")]));
        let r = torsion_via_psi_with(&c, 2, &PsiOptions::default()).unwrap();
        assert_eq!(r.module, conjugate(&h1));
        assert_eq!(r.stable_m, 2);
    }
}
