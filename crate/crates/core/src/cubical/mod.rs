//! Cubical sets over the cube category with faces and degeneracies.

pub mod cube;
pub mod generators;
pub mod pushout;
pub mod tensor;
pub mod triangulate;

pub use cube::{cube_compose, CubeMorphism, Slot};
pub use generators::{cube, cube_boundary, cube_generators, cube_horn, CubeGenerator};
pub use pushout::{all_cases, verify_pushout_product, PushoutCase, PushoutVerdict};
pub use tensor::{tensor, tensor_map, tensor_ops, Tensor};
pub use triangulate::triangulate;

pub type CubicalSet = crate::complex::Complex<CubeMorphism>;
pub type CubicalMap = crate::complex::ComplexMap<CubeMorphism>;
