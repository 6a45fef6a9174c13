//! Finite simplicial sets over the simplex category.

pub mod ex;
pub mod generators;
pub mod monotone;
pub mod product;
pub mod sd;

pub use ex::{characteristic, ex, fill_horn, simplex_map, Ex, HornFill};
pub use generators::{boundary, horn, simplex, Generator};
pub use monotone::Monotone;
pub use product::{product, Product};
pub use sd::{sd, Subdivision};

pub type SimplicialSet = crate::complex::Complex<Monotone>;
pub type SimplicialMap = crate::complex::ComplexMap<Monotone>;
