use std::collections::HashMap;
use std::sync::Arc;

use super::{FiniteCategory, FunctorData};
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// A set-valued presheaf: finite sets `X(a)` and, for `f: a -> b`, a function `X(b) -> X(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPresheaf {
    pub base: Arc<FiniteCategory>,
    /// element ids per object, sorted
    elements: Vec<Vec<String>>,
    /// `action[f][y] = X(f)(y)` as element indices
    action: Vec<Vec<usize>>,
}

impl SetPresheaf {
    /// Assembles a presheaf; element lists are sorted here and the action reindexed.
    pub fn new(base: Arc<FiniteCategory>, elements: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        if elements.len() != base.object_count() || action.len() != base.morphism_count() {
            return Err(Error::malformed("presheaf shape does not match its base"));
        }
        let mut perms = Vec::new();
        let mut sorted = Vec::new();
        for (a, els) in elements.iter().enumerate() {
            let mut order: Vec<usize> = (0..els.len()).collect();
            order.sort_by(|&i, &j| els[i].cmp(&els[j]));
            let mut new_index = vec![0; els.len()];
            for (k, &i) in order.iter().enumerate() {
                new_index[i] = k;
            }
            let s: Vec<String> = order.iter().map(|&i| els[i].clone()).collect();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::malformed(format!("duplicate element at object {}", base.objects()[a])));
            }
            sorted.push(s);
            perms.push((order, new_index));
        }
        let mut act = Vec::with_capacity(action.len());
        for (f, row) in action.into_iter().enumerate() {
            let (a, b) = (base.source(f), base.target(f));
            if row.len() != elements[b].len() {
                return Err(Error::malformed(format!("action of {} has the wrong length", base.morphisms()[f].id)));
            }
            if row.iter().any(|&x| x >= elements[a].len()) {
                return Err(Error::malformed(format!("action of {} leaves X({})", base.morphisms()[f].id, base.objects()[a])));
            }
            let (order_b, _) = &perms[b];
            let (_, index_a) = &perms[a];
            act.push(order_b.iter().map(|&old| index_a[row[old]]).collect());
        }
        Ok(SetPresheaf {
            base,
            elements: sorted,
            action: act,
        })
    }

    /// Builds from ids: `elements` lists `(object, element)`, `action` lists `(morphism, element at
    /// target, element at source)`. Identities act trivially unless declared.
    pub fn from_ids(base: Arc<FiniteCategory>, elements: &[(String, String)], action: &[(String, String, String)]) -> Result<Self> {
        let mut els: Vec<Vec<String>> = vec![Vec::new(); base.object_count()];
        for (a, x) in elements {
            let i = base.object(a).ok_or_else(|| Error::malformed(format!("unknown object {a}")))?;
            els[i].push(x.clone());
        }
        for e in els.iter_mut() {
            e.sort();
        }
        let index: Vec<HashMap<&str, usize>> =
            els.iter().map(|e| e.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect()).collect();
        let mut act: Vec<Vec<Option<usize>>> =
            (0..base.morphism_count()).map(|f| vec![None; els[base.target(f)].len()]).collect();
        for (f, y, x) in action {
            let fi = base.morphism(f).ok_or_else(|| Error::malformed(format!("unknown morphism {f}")))?;
            let (a, b) = (base.source(fi), base.target(fi));
            let yi = *index[b]
                .get(y.as_str())
                .ok_or_else(|| Error::malformed(format!("unknown element {y} of {}", base.objects()[b])))?;
            let xi = *index[a]
                .get(x.as_str())
                .ok_or_else(|| Error::malformed(format!("unknown element {x} of {}", base.objects()[a])))?;
            act[fi][yi] = Some(xi);
        }
        let action = act
            .into_iter()
            .enumerate()
            .map(|(f, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(y, x)| match x {
                        Some(x) => Ok(x),
                        None if base.is_identity(f) => Ok(y),
                        None => Err(Error::malformed(format!(
                            "action of {} on {} is not given",
                            base.morphisms()[f].id,
                            els[base.target(f)][y]
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, els, action)
    }

    pub fn elements(&self, a: usize) -> &[String] {
        &self.elements[a]
    }

    pub fn size(&self, a: usize) -> usize {
        self.elements[a].len()
    }

    pub fn total_size(&self) -> usize {
        self.elements.iter().map(Vec::len).sum()
    }

    pub fn element(&self, a: usize, id: &str) -> Option<usize> {
        self.elements[a].binary_search_by(|e| e.as_str().cmp(id)).ok()
    }

    /// `X(f)(y)`.
    pub fn act(&self, f: usize, y: usize) -> usize {
        self.action[f][y]
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.action[f]
    }

    /// Checks `X(id) = id` and `X(g ∘ f) = X(f) ∘ X(g)`.
    pub fn validate(&self) -> ValidationReport {
        let base = &self.base;
        let mut report = ValidationReport::default();
        for a in 0..base.object_count() {
            let i = base.identity(a);
            for y in 0..self.size(a) {
                if self.act(i, y) != y {
                    report.push("X(id) = id", vec![base.objects()[a].clone(), self.elements[a][y].clone()]);
                }
            }
        }
        let mut entries: Vec<_> = base.composition_table().iter().collect();
        entries.sort();
        for (&(g, f), &h) in entries {
            if base.target(f) != base.source(g) {
                continue;
            }
            let c = base.target(g);
            for z in 0..self.size(c) {
                if self.act(h, z) != self.act(f, self.act(g, z)) {
                    report.push(
                        "X(g∘f) = X(f)∘X(g)",
                        vec![base.morphisms()[g].id.clone(), base.morphisms()[f].id.clone(), self.elements[c][z].clone()],
                    );
                }
            }
        }
        report
    }

    /// The presheaf with one element `*` everywhere.
    pub fn terminal(base: Arc<FiniteCategory>) -> Self {
        let n = base.object_count();
        let action = vec![vec![0]; base.morphism_count()];
        SetPresheaf::new(base, vec![vec!["*".to_string()]; n], action).expect("well-formed")
    }

    pub fn empty(base: Arc<FiniteCategory>) -> Self {
        let n = base.object_count();
        let action = vec![Vec::new(); base.morphism_count()];
        SetPresheaf::new(base, vec![Vec::new(); n], action).expect("well-formed")
    }

    /// The constant presheaf on a set.
    pub fn constant(base: Arc<FiniteCategory>, set: &[String]) -> Self {
        let n = base.object_count();
        let action = vec![(0..set.len()).collect(); base.morphism_count()];
        SetPresheaf::new(base, vec![set.to_vec(); n], action).expect("well-formed")
    }

    /// `y(c) = Hom(-, c)`; elements are morphism ids.
    pub fn representable(base: Arc<FiniteCategory>, c: usize) -> Self {
        let elements: Vec<Vec<usize>> = (0..base.object_count()).map(|a| base.hom(a, c).collect()).collect();
        let ids: Vec<Vec<String>> = elements
            .iter()
            .map(|row| row.iter().map(|&m| base.morphisms()[m].id.clone()).collect())
            .collect();
        let position: Vec<HashMap<usize, usize>> =
            elements.iter().map(|row| row.iter().enumerate().map(|(i, &m)| (m, i)).collect()).collect();
        let action = (0..base.morphism_count())
            .map(|f| {
                let (a, b) = (base.source(f), base.target(f));
                elements[b].iter().map(|&g| position[a][&base.compose(g, f)]).collect()
            })
            .collect();
        SetPresheaf::new(base, ids, action).expect("well-formed")
    }

    /// Objectwise product; element ids are `(x,y)`.
    pub fn product(&self, other: &SetPresheaf) -> Result<SetPresheaf> {
        if self.base != other.base {
            return Err(Error::invalid("product of presheaves over different bases"));
        }
        let base = self.base.clone();
        let n = base.object_count();
        let elements: Vec<Vec<String>> = (0..n)
            .map(|a| {
                let mut v = Vec::new();
                for x in &self.elements[a] {
                    for y in &other.elements[a] {
                        v.push(format!("({x},{y})"));
                    }
                }
                v
            })
            .collect();
        let action = (0..base.morphism_count())
            .map(|f| {
                let (a, b) = (base.source(f), base.target(f));
                let mut row = Vec::new();
                for x in 0..self.size(b) {
                    for y in 0..other.size(b) {
                        row.push(self.act(f, x) * other.size(a) + other.act(f, y));
                    }
                }
                row
            })
            .collect();
        SetPresheaf::new(base, elements, action)
    }

    /// Objectwise disjoint union; element ids are `0:x` and `1:y`.
    pub fn coproduct(&self, other: &SetPresheaf) -> Result<SetPresheaf> {
        if self.base != other.base {
            return Err(Error::invalid("coproduct of presheaves over different bases"));
        }
        let base = self.base.clone();
        let elements = (0..base.object_count())
            .map(|a| {
                self.elements[a]
                    .iter()
                    .map(|x| format!("0:{x}"))
                    .chain(other.elements[a].iter().map(|y| format!("1:{y}")))
                    .collect()
            })
            .collect();
        let action = (0..base.morphism_count())
            .map(|f| {
                let a = base.source(f);
                self.action[f]
                    .iter()
                    .copied()
                    .chain(other.action[f].iter().map(|&y| y + self.size(a)))
                    .collect()
            })
            .collect();
        SetPresheaf::new(base, elements, action)
    }

    /// The subpresheaf on the given element sets, which must be closed under the action.
    pub fn subpresheaf(&self, keep: &[Vec<bool>]) -> Result<SetPresheaf> {
        let base = self.base.clone();
        let index: Vec<Vec<Option<usize>>> = keep
            .iter()
            .map(|row| {
                let mut k = 0;
                row.iter()
                    .map(|&b| {
                        b.then(|| {
                            k += 1;
                            k - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let elements = (0..base.object_count())
            .map(|a| (0..self.size(a)).filter(|&x| keep[a][x]).map(|x| self.elements[a][x].clone()).collect())
            .collect();
        let action = (0..base.morphism_count())
            .map(|f| {
                let (a, b) = (base.source(f), base.target(f));
                (0..self.size(b))
                    .filter(|&y| keep[b][y])
                    .map(|y| {
                        index[a][self.act(f, y)].ok_or_else(|| Error::invalid("subpresheaf is not closed under the action"))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SetPresheaf::new(base, elements, action)
    }
}

/// A natural transformation `X -> Y` given by its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMorphism {
    pub components: Vec<Vec<usize>>,
}

impl PresheafMorphism {
    pub fn validate(&self, x: &SetPresheaf, y: &SetPresheaf) -> ValidationReport {
        let base = &x.base;
        let mut report = ValidationReport::default();
        if self.components.len() != base.object_count()
            || (0..base.object_count()).any(|a| self.components[a].len() != x.size(a) || self.components[a].iter().any(|&e| e >= y.size(a)))
        {
            report.push("component shape", vec![]);
            return report;
        }
        for f in 0..base.morphism_count() {
            let (a, b) = (base.source(f), base.target(f));
            for z in 0..x.size(b) {
                if self.components[a][x.act(f, z)] != y.act(f, self.components[b][z]) {
                    report.push("naturality", vec![base.morphisms()[f].id.clone(), x.elements(b)[z].clone()]);
                }
            }
        }
        report
    }

    pub fn identity(x: &SetPresheaf) -> Self {
        PresheafMorphism {
            components: (0..x.base.object_count()).map(|a| (0..x.size(a)).collect()).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PresheafMorphism) -> PresheafMorphism {
        PresheafMorphism {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    /// The global point `1 -> X` picking a compatible family of elements, one per object.
    pub fn point(family: Vec<usize>) -> Self {
        PresheafMorphism {
            components: family.into_iter().map(|x| vec![x]).collect(),
        }
    }

    /// Elements in the image, per object.
    pub fn image(&self, y: &SetPresheaf) -> Vec<Vec<bool>> {
        (0..self.components.len())
            .map(|a| {
                let mut row = vec![false; y.size(a)];
                for &e in &self.components[a] {
                    row[e] = true;
                }
                row
            })
            .collect()
    }
}

/// `u^* X = X ∘ u`.
pub fn restrict(u: &FunctorData, x: &SetPresheaf) -> Result<SetPresheaf> {
    if *u.target != *x.base {
        return Err(Error::invalid("presheaf does not live over the functor's target"));
    }
    let elements = u.objects.iter().map(|&b| x.elements(b).to_vec()).collect();
    let action = u.morphisms.iter().map(|&g| x.action(g).to_vec()).collect();
    SetPresheaf::new(u.source.clone(), elements, action)
}
