use std::sync::Arc;

use super::{CubeMorphism, CubicalSet};
use crate::catcore::{catalog, elements};
use crate::error::{Budget, Result};
use crate::shape::classifying_complex;
use crate::simplicial::SimplicialSet;

/// A simplicial model of a cubical set: the nerve of its category of elements over the cube
/// category truncated at its dimension, taken over the nondegenerate cells when the reflective
/// reduction certifies (homotopy equivalent to the full nerve either way).
pub fn triangulate(x: &CubicalSet, dmax: usize, budget: &Budget) -> Result<SimplicialSet> {
    let n = x.dim().unwrap_or(0);
    let base = Arc::new(catalog::truncated::<CubeMorphism>(n));
    let p = catalog::complex_as_presheaf(x, base, n)?;
    Ok(classifying_complex(&elements(&p)?.category, dmax, budget)?.complex)
}
