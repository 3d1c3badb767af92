//! Kernels of `psi_mm` on cohomology of a thickened complex, shared by the
//! presentation and CDGA pipelines.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::qmat::{QMatrix, Quotient, Subspace};

/// One degree of a thickened complex at level `m`, flattened to `Q`.
pub(crate) struct Level {
    /// Coboundary into this degree.
    pub d_in: QMatrix,
    /// Coboundary out of this degree.
    pub d_out: QMatrix,
    /// Action of `t` on the cochains of this degree.
    pub t: QMatrix,
}

impl Level {
    pub fn cohomology_dim(&self) -> usize {
        self.d_out.cols() - self.d_out.rank() - self.d_in.rank()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Stage {
    pub m: usize,
    /// Cohomology dimension at this level minus the free part, `r * deg(g) * m`.
    pub excess: i64,
    pub kernel_dim: usize,
    pub char_poly: LaurentPoly,
    pub t_on_kernel: QMatrix,
}

/// `ker(psi: H(level m) -> H(level 2m))` with the induced `t`-action.
///
/// `psi` maps cochains of this degree at level `m` to those at level `2m`;
/// `d_in_double` is the incoming coboundary at level `2m`.
pub(crate) fn psi_kernel(level: &Level, d_in_double: &QMatrix, psi: &QMatrix) -> (usize, QMatrix) {
    let cocycles = Subspace::span(level.d_out.cols(), &level.d_out.nullspace().columns());
    let coboundaries = level.d_in.column_space();
    let killed = Subspace::preimage(psi, &d_in_double.column_space());
    let kpsi = cocycles.intersect(&killed);
    let q = Quotient::new(&kpsi, &coboundaries);
    let t = q.induced(&level.t);
    (q.dim(), t)
}

/// Doubles `m` from 1 until stages `m` and `2m` agree in kernel dimension,
/// characteristic polynomial and excess dimension; returns stage `m`.
pub(crate) fn stabilize(max_m: usize, mut stage: impl FnMut(usize) -> Result<Stage>) -> Result<Stage> {
    let mut prev = stage(1)?;
    loop {
        let next_m = prev.m * 2;
        if next_m > max_m {
            return Err(Error::NoStabilization { cap: max_m });
        }
        let next = stage(next_m)?;
        if prev.kernel_dim == next.kernel_dim && prev.char_poly == next.char_poly && prev.excess == next.excess {
            return Ok(prev);
        }
        prev = next;
    }
}

/// Default cap on the truncation order, overridable with `ALEXMOD_MAX_M`.
pub fn max_m_from_env() -> usize {
    std::env::var("ALEXMOD_MAX_M").ok().and_then(|s| s.trim().parse().ok()).filter(|&m| m >= 2).unwrap_or(64)
}
