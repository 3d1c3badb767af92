//! Linear algebra over the principal ideal domain `R = Q[t, t^-1]`.

mod complex;
mod matrix;
mod module;
mod snf;

pub use complex::ComplexOverR;
pub use matrix::MatrixOverR;
pub use module::{
    companion, conjugate, ext1_dual, module_of_automorphism, restrict_to_rn, torsion_part, uct_cohomology,
    FgRModule,
};
pub use snf::{smith_normal_form, SmithForm};
