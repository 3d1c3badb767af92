//! Exact arithmetic in `R = Q[t, t^-1]` and the truncated rings
//! `R_m = Q[s]/(s^m)` with `s = t - 1`.

mod cyclotomic;
mod poly;
mod truncated;

pub use cyclotomic::{cyclotomic, cyclotomic_factor, euler_phi, CyclotomicFactorization};
pub use poly::LaurentPoly;
pub use truncated::{truncate, twist_series, unit_log_series, TruncatedPoly};

/// Canonical associate: monic ordinary polynomial with nonzero constant term.
pub fn normalize(p: &LaurentPoly) -> LaurentPoly {
    p.normalize()
}
