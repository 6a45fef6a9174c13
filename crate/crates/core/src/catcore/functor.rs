use std::sync::Arc;

use super::FiniteCategory;
use crate::error::{Error, Result};
use crate::validation::ValidationReport;

/// A functor between finite categories, given by its object and morphism assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl FunctorData {
    /// Builds from id assignments; every source object and non-identity morphism must be assigned.
    /// Identities default to identities.
    pub fn from_ids(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: &[(String, String)],
        morphisms: &[(String, String)],
    ) -> Result<Self> {
        let mut obj = vec![None; source.object_count()];
        for (a, b) in objects {
            let i = source.object(a).ok_or_else(|| Error::malformed(format!("unknown source object {a}")))?;
            let j = target.object(b).ok_or_else(|| Error::malformed(format!("unknown target object {b}")))?;
            obj[i] = Some(j);
        }
        let objects: Vec<usize> = obj
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| Error::malformed(format!("object {} is not assigned", source.objects()[i]))))
            .collect::<Result<_>>()?;
        let mut mor = vec![None; source.morphism_count()];
        for (f, g) in morphisms {
            let i = source.morphism(f).ok_or_else(|| Error::malformed(format!("unknown source morphism {f}")))?;
            let j = target.morphism(g).ok_or_else(|| Error::malformed(format!("unknown target morphism {g}")))?;
            mor[i] = Some(j);
        }
        let morphisms = mor
            .into_iter()
            .enumerate()
            .map(|(i, m)| match m {
                Some(j) => Ok(j),
                None if source.is_identity(i) => Ok(target.identity(objects[source.source(i)])),
                None => Err(Error::malformed(format!("morphism {} is not assigned", source.morphisms()[i].id))),
            })
            .collect::<Result<_>>()?;
        Ok(FunctorData {
            source,
            target,
            objects,
            morphisms,
        })
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        FunctorData {
            objects: (0..c.object_count()).collect(),
            morphisms: (0..c.morphism_count()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// Checks that sources, targets, identities and composites are preserved.
    pub fn validate(&self) -> ValidationReport {
        let (s, t) = (&self.source, &self.target);
        let mut report = ValidationReport::default();
        for (f, m) in s.morphisms().iter().enumerate() {
            let g = self.morphisms[f];
            if t.source(g) != self.objects[m.source] || t.target(g) != self.objects[m.target] {
                report.push("preserves endpoints", vec![m.id.clone(), t.morphisms()[g].id.clone()]);
            }
        }
        for a in 0..s.object_count() {
            if self.morphisms[s.identity(a)] != t.identity(self.objects[a]) {
                report.push("preserves identities", vec![s.objects()[a].clone()]);
            }
        }
        if !report.is_empty() {
            return report;
        }
        for (&(g, f), &h) in s.composition_table() {
            if t.try_compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[h]) {
                report.push("preserves composition", vec![s.morphisms()[g].id.clone(), s.morphisms()[f].id.clone()]);
            }
        }
        report
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FunctorData) -> FunctorData {
        FunctorData {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&o| other.objects[o]).collect(),
            morphisms: self.morphisms.iter().map(|&m| other.morphisms[m]).collect(),
        }
    }
}
