//! Thickened complexes `A(η, m)` of finite bifiltered CDGAs: cohomology,
//! torsion, structure maps and filtrations.

mod cdga;
mod filtrations;
pub mod random;
mod suite;
mod thickening;
mod torsion;

pub use cdga::{BifilteredCdga, CdgaSpec, Coeff};
pub use filtrations::{
    filtrations_preserved, hodge_graded_interplay, structure_shift_check, tate_graded_check, weight_graded,
    GradedPiece, InterplaySides, StructureShiftReport,
};
pub use suite::{structural_suite, StructuralReport};
pub use thickening::{
    gauge_isomorphism, induced_map, phi_matrix, psi_matrix, structure_maps, thicken_cdga, CdgaMorphism, Direction,
    GaugeMap, InducedMap, StructureMaps, ThickenedComplex,
};
pub use torsion::{oracle_torsion, psi_torsion_of_thickening, torsion_of_thickening, ThickeningTorsion};
