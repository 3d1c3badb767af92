//! Twisted chain complexes of group presentations, Alexander modules, and
//! the truncated cochain model with its `ψ`-kernels.

mod cochain;
mod cover;
mod presentation;

pub use cochain::{
    rm_cochain_complex, torsion_via_psi, torsion_via_psi_with, CoverChoice, CoverQuotient, PsiOptions, PsiTorsion,
    RmCochainComplex,
};
pub use cover::{
    cover_kernel_check, cover_presentation, milnor_split_check, untwisted_b1, CoverKernelReport, MilnorReport, Verdict,
};
pub use presentation::{
    alexander_homology, fox_derivative, presentation_complex, Epimorphism, GroupPresentation, PresentationComplex,
    PresentationSpec,
};
