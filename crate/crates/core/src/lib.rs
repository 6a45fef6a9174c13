//! Finite-scale shape computations for presheaves.
//!
//! Simplicial and cubical sets are stored in Eilenberg–Zilber normal form
//! (nondegenerate cells plus face references). Categories of elements,
//! nerves, subdivision, Kan's Ex, descent constructions and lifting problems
//! are built on that representation, and exact integer invariants come from
//! Smith normal form.

pub mod catcore;
pub mod cli;
pub mod complex;
pub mod cubical;
pub mod descent;
pub mod error;
pub mod format;
pub mod homotopical;
pub mod par;
pub mod shape;
pub mod simplicial;
pub mod validation;
pub mod invariants;

pub use error::{Error, Result};
