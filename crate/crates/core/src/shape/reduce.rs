//! Shrinking a category to a reflective full subcategory before taking its nerve.
//!
//! If every object `e` has a universal arrow `e -> r(e)` into a full subcategory `D`
//! (every arrow from `e` into `D` factors through it uniquely), then `D` is reflective and
//! the inclusion induces a homotopy equivalence of nerves. Candidates for `D` are the
//! objects with no outgoing non-invertible split epimorphism, which for categories of
//! elements are the nondegenerate elements.

use std::collections::HashMap;

use crate::catcore::{FiniteCategory, Morphism};
use crate::error::Result;
use crate::par;

/// The reflective subcategory found, if the universal property holds everywhere.
pub struct Reflection {
    pub subcategory: FiniteCategory,
    /// kept objects, as indices of the ambient category
    pub kept: Vec<usize>,
}

fn universal_arrow(c: &FiniteCategory, e: usize, keep: &[bool]) -> Option<usize> {
    let into_d: Vec<usize> = c.outgoing(e).iter().copied().filter(|&v| keep[c.target(v)]).collect();
    into_d.iter().copied().find(|&u| {
        let d = c.target(u);
        into_d.iter().all(|&v| {
            let count = c.hom(d, c.target(v)).filter(|&g| c.compose(g, u) == v).take(2).count();
            count == 1
        })
    })
}

/// Tries the split-epi reduction; `None` when some object has no universal arrow.
pub fn reflect(c: &FiniteCategory) -> Result<Option<Reflection>> {
    let split = c.proper_split_epis();
    let keep: Vec<bool> = (0..c.object_count())
        .map(|a| !c.outgoing(a).iter().any(|&f| split[f]))
        .collect();
    if keep.iter().all(|&k| k) {
        return Ok(None);
    }
    let others: Vec<usize> = (0..c.object_count()).filter(|&a| !keep[a]).collect();
    let ok = par::map(&others, |&e| universal_arrow(c, e, &keep).is_some());
    if ok.iter().any(|&b| !b) {
        return Ok(None);
    }
    let kept: Vec<usize> = (0..c.object_count()).filter(|&a| keep[a]).collect();
    Ok(Some(Reflection {
        subcategory: full_subcategory(c, &kept)?,
        kept,
    }))
}

/// The full subcategory on `objects` (ambient indices, ascending).
pub fn full_subcategory(c: &FiniteCategory, objects: &[usize]) -> Result<FiniteCategory> {
    let pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut mor_pos = HashMap::new();
    let mut morphisms = Vec::new();
    for (f, m) in c.morphisms().iter().enumerate() {
        if let (Some(&s), Some(&t)) = (pos.get(&m.source), pos.get(&m.target)) {
            mor_pos.insert(f, morphisms.len());
            morphisms.push(Morphism {
                id: m.id.clone(),
                source: s,
                target: t,
            });
        }
    }
    let identities = objects.iter().map(|&a| mor_pos[&c.identity(a)]).collect();
    let mut composition = HashMap::new();
    for &f in mor_pos.keys() {
        for &g in c.outgoing(c.target(f)) {
            if let Some(&gi) = mor_pos.get(&g) {
                composition.insert((gi, mor_pos[&f]), mor_pos[&c.compose(g, f)]);
            }
        }
    }
    FiniteCategory::from_parts(
        objects.iter().map(|&a| c.objects()[a].clone()).collect(),
        morphisms,
        identities,
        composition,
        false,
    )
}
