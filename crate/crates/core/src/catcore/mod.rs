//! Finite categories, presheaves of sets, categories of elements, nerves and the subobject classifier.

pub mod catalog;
mod category;
mod elements;
mod functor;
mod nerve;
mod omega;
mod presheaf;

pub use category::{validate_category, CategoryBuilder, FiniteCategory, Morphism};
pub use elements::{elements, elements_map, Elements};
pub use functor::FunctorData;
pub use nerve::nerve;
pub use omega::{sieves, subobject_classifier};
pub use presheaf::{restrict, PresheafMorphism, SetPresheaf};
