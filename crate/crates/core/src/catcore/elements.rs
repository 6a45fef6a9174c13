use std::collections::HashMap;
use std::sync::Arc;

use super::{FiniteCategory, FunctorData, Morphism, PresheafMorphism, SetPresheaf};
use crate::error::{Error, Result};

/// The category of elements of a presheaf, remembering where each object and morphism came from.
#[derive(Clone, Debug)]
pub struct Elements {
    pub category: Arc<FiniteCategory>,
    /// object `k` is the element `objects[k].1` of `X(objects[k].0)`
    pub objects: Vec<(usize, usize)>,
    /// morphism `k` is the base morphism `morphisms[k].0` out of the element `morphisms[k].1` at its target
    pub morphisms: Vec<(usize, usize)>,
    object_of: HashMap<(usize, usize), usize>,
    morphism_of: HashMap<(usize, usize), usize>,
}

fn sort_ids(ids: &[String], what: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&i, &j| ids[i].cmp(&ids[j]));
    if order.windows(2).any(|w| ids[w[0]] == ids[w[1]]) {
        return Err(Error::malformed(format!("{what} ids collide; element or morphism ids contain '@'")));
    }
    let mut rank = vec![0; ids.len()];
    for (k, &i) in order.iter().enumerate() {
        rank[i] = k;
    }
    Ok((order, rank))
}

impl Elements {
    pub fn object_of(&self, a: usize, x: usize) -> usize {
        self.object_of[&(a, x)]
    }

    pub fn morphism_of(&self, f: usize, y: usize) -> usize {
        self.morphism_of[&(f, y)]
    }

    /// The projection to the base category.
    pub fn projection(&self, base: Arc<FiniteCategory>) -> FunctorData {
        FunctorData {
            source: self.category.clone(),
            target: base,
            objects: self.objects.iter().map(|o| o.0).collect(),
            morphisms: self.morphisms.iter().map(|m| m.0).collect(),
        }
    }
}

/// Objects `(a, x)` with ids `x@a`; a morphism `f@y : (a, X(f) y) -> (b, y)` for each `f: a -> b`.
pub fn elements(x: &SetPresheaf) -> Result<Elements> {
    let base = &x.base;
    let mut raw_objects = Vec::new();
    let mut object_ids = Vec::new();
    for a in 0..base.object_count() {
        for (i, e) in x.elements(a).iter().enumerate() {
            raw_objects.push((a, i));
            object_ids.push(format!("{e}@{}", base.objects()[a]));
        }
    }
    let (obj_order, obj_rank) = sort_ids(&object_ids, "object")?;
    let object_of: HashMap<(usize, usize), usize> = raw_objects.iter().enumerate().map(|(k, &o)| (o, obj_rank[k])).collect();
    let mut raw_morphisms = Vec::new();
    let mut morphism_ids = Vec::new();
    // offsets so that (f, y) has raw index offset[f] + y
    let mut offset = Vec::with_capacity(base.morphism_count());
    for (f, m) in base.morphisms().iter().enumerate() {
        offset.push(raw_morphisms.len());
        for (y, e) in x.elements(m.target).iter().enumerate() {
            raw_morphisms.push((f, y));
            morphism_ids.push(format!("{}@{e}", m.id));
        }
    }
    let (mor_order, mor_rank) = sort_ids(&morphism_ids, "morphism")?;
    let morphisms: Vec<Morphism> = mor_order
        .iter()
        .map(|&k| {
            let (f, y) = raw_morphisms[k];
            let (a, b) = (base.source(f), base.target(f));
            Morphism {
                id: morphism_ids[k].clone(),
                source: object_of[&(a, x.act(f, y))],
                target: object_of[&(b, y)],
            }
        })
        .collect();
    let identities: Vec<usize> = obj_order
        .iter()
        .map(|&k| {
            let (a, e) = raw_objects[k];
            mor_rank[offset[base.identity(a)] + e]
        })
        .collect();
    // (g@z) ∘ (f@X(g)z) = (g∘f)@z
    let mut composition = HashMap::new();
    for (g, m) in base.morphisms().iter().enumerate() {
        for z in 0..x.size(m.target) {
            let y = x.act(g, z);
            for &f in base.incoming(m.source) {
                let h = base.compose(g, f);
                composition.insert(
                    (mor_rank[offset[g] + z], mor_rank[offset[f] + y]),
                    mor_rank[offset[h] + z],
                );
            }
        }
    }
    let category = FiniteCategory::from_parts(
        obj_order.iter().map(|&k| object_ids[k].clone()).collect(),
        morphisms,
        identities,
        composition,
        false,
    )?;
    let objects = obj_order.iter().map(|&k| raw_objects[k]).collect();
    let morphisms = mor_order.iter().map(|&k| raw_morphisms[k]).collect();
    let morphism_of = raw_morphisms.iter().enumerate().map(|(k, &m)| (m, mor_rank[k])).collect();
    Ok(Elements {
        category: Arc::new(category),
        objects,
        morphisms,
        object_of,
        morphism_of,
    })
}

/// The functor `elements(X) -> elements(Y)` induced by `φ: X -> Y`.
pub fn elements_map(phi: &PresheafMorphism, x: &Elements, y: &Elements, base: &FiniteCategory) -> FunctorData {
    FunctorData {
        source: x.category.clone(),
        target: y.category.clone(),
        objects: x.objects.iter().map(|&(a, e)| y.object_of(a, phi.components[a][e])).collect(),
        morphisms: x
            .morphisms
            .iter()
            .map(|&(f, e)| y.morphism_of(f, phi.components[base.target(f)][e]))
            .collect(),
    }
}
