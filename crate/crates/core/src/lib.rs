//! Alexander modules of spaces with a map to the circle, computed exactly.
//!
//! The crate covers Laurent-polynomial linear algebra ([`rmodule`]), twisted
//! chain complexes of group presentations ([`localsys`]), thickened complexes
//! of bifiltered CDGAs ([`thicken`]), numeric checks on torsion modules
//! ([`invariants`]) and planar line arrangements ([`arrangements`]).

pub mod arrangements;
pub mod error;
pub mod fixtures;
pub mod invariants;
pub mod laurent;
pub mod localsys;
mod psi;
pub mod qmat;
pub mod rational;
pub mod rmodule;
pub mod thicken;

pub use error::{Error, Result};
