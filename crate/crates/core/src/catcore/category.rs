use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::validation::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// A finite category with a total composition table.
///
/// Objects and morphisms are kept sorted by id, so indices are canonical.
/// `compose(g, f)` is `g ∘ f` for `f: a -> b`, `g: b -> c`.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    object_index: HashMap<String, usize>,
    morphisms: Vec<Morphism>,
    morphism_index: HashMap<String, usize>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.composition == other.composition
    }
}

impl Eq for FiniteCategory {}

/// Collects objects, morphisms, identities and composites by id.
///
/// Objects without a declared identity get a fresh morphism `id_<obj>`; composites with
/// identities are filled in unless declared.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    objects: BTreeSet<String>,
    morphisms: BTreeMap<String, (String, String)>,
    identities: BTreeMap<String, String>,
    composites: Vec<(String, String, String)>,
    duplicate: Option<String>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, id: impl Into<String>) -> &mut Self {
        let id = id.into();
        if !self.objects.insert(id.clone()) {
            self.duplicate.get_or_insert(format!("object {id}"));
        }
        self
    }

    pub fn morphism(&mut self, id: impl Into<String>, source: impl Into<String>, target: impl Into<String>) -> &mut Self {
        let id = id.into();
        if self.morphisms.insert(id.clone(), (source.into(), target.into())).is_some() {
            self.duplicate.get_or_insert(format!("morphism {id}"));
        }
        self
    }

    pub fn identity(&mut self, object: impl Into<String>, morphism: impl Into<String>) -> &mut Self {
        let object = object.into();
        if self.identities.insert(object.clone(), morphism.into()).is_some() {
            self.duplicate.get_or_insert(format!("identity of {object}"));
        }
        self
    }

    /// Declares `g ∘ f = h`.
    pub fn compose(&mut self, g: impl Into<String>, f: impl Into<String>, h: impl Into<String>) -> &mut Self {
        self.composites.push((g.into(), f.into(), h.into()));
        self
    }

    /// Resolves ids. Dangling or duplicate ids are malformed input; law violations are left to
    /// [`FiniteCategory::validate`].
    pub fn build(&self) -> Result<FiniteCategory> {
        if let Some(d) = &self.duplicate {
            return Err(Error::malformed(format!("duplicate {d}")));
        }
        let mut morphisms = self.morphisms.clone();
        let mut identities = self.identities.clone();
        for o in &self.objects {
            if !identities.contains_key(o) {
                let id = format!("id_{o}");
                if morphisms.contains_key(&id) {
                    return Err(Error::malformed(format!("{id} is declared but not as the identity of {o}")));
                }
                morphisms.insert(id.clone(), (o.clone(), o.clone()));
                identities.insert(o.clone(), id);
            }
        }
        let objects: Vec<String> = self.objects.iter().cloned().collect();
        let object_index: HashMap<String, usize> = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let obj = |o: &str, what: &str| {
            object_index
                .get(o)
                .copied()
                .ok_or_else(|| Error::malformed(format!("{what} refers to unknown object {o}")))
        };
        let mut ms = Vec::new();
        for (id, (s, t)) in &morphisms {
            ms.push(Morphism {
                id: id.clone(),
                source: obj(s, &format!("morphism {id}"))?,
                target: obj(t, &format!("morphism {id}"))?,
            });
        }
        let morphism_index: HashMap<String, usize> = ms.iter().enumerate().map(|(i, m)| (m.id.clone(), i)).collect();
        let mor = |m: &str, what: &str| {
            morphism_index
                .get(m)
                .copied()
                .ok_or_else(|| Error::malformed(format!("{what} refers to unknown morphism {m}")))
        };
        for o in identities.keys() {
            obj(o, "identity declaration")?;
        }
        let ids: Vec<usize> = objects
            .iter()
            .map(|o| mor(&identities[o], &format!("identity of {o}")))
            .collect::<Result<_>>()?;
        let mut composition = HashMap::new();
        for (g, f, h) in &self.composites {
            let key = (mor(g, "composite")?, mor(f, "composite")?);
            let h = mor(h, "composite")?;
            if composition.insert(key, h).is_some_and(|old| old != h) {
                return Err(Error::malformed(format!("conflicting composites for {g} ∘ {f}")));
            }
        }
        FiniteCategory::from_parts(objects, ms, ids, composition, true)
    }
}

impl FiniteCategory {
    /// Assembles a category from resolved parts. With `fill_identities`, missing composites
    /// with identity morphisms are added.
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Morphism>,
        identities: Vec<usize>,
        mut composition: HashMap<(usize, usize), usize>,
        fill_identities: bool,
    ) -> Result<Self> {
        debug_assert!(objects.windows(2).all(|w| w[0] < w[1]), "objects sorted");
        debug_assert!(morphisms.windows(2).all(|w| w[0].id < w[1].id), "morphisms sorted");
        let object_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let morphism_index = morphisms.iter().enumerate().map(|(i, m)| (m.id.clone(), i)).collect();
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            if m.source >= objects.len() || m.target >= objects.len() {
                return Err(Error::malformed(format!("morphism {} has a dangling endpoint", m.id)));
            }
            outgoing[m.source].push(i);
            incoming[m.target].push(i);
        }
        if fill_identities {
            for (i, m) in morphisms.iter().enumerate() {
                composition.entry((identities[m.target], i)).or_insert(i);
                composition.entry((i, identities[m.source])).or_insert(i);
            }
        }
        Ok(FiniteCategory {
            objects,
            object_index,
            morphisms,
            morphism_index,
            identities,
            composition,
            outgoing,
            incoming,
        })
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object(&self, id: &str) -> Option<usize> {
        self.object_index.get(id).copied()
    }

    pub fn morphism(&self, id: &str) -> Option<usize> {
        self.morphism_index.get(id).copied()
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identities[self.morphisms[f].source] == f
    }

    pub fn outgoing(&self, a: usize) -> &[usize] {
        &self.outgoing[a]
    }

    pub fn incoming(&self, b: usize) -> &[usize] {
        &self.incoming[b]
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.outgoing[a].iter().copied().filter(move |&f| self.morphisms[f].target == b)
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.composition.get(&(g, f)).copied()
    }

    /// `g ∘ f`; panics if the pair is not in the table (validated categories only).
    pub fn compose(&self, g: usize, f: usize) -> usize {
        match self.try_compose(g, f) {
            Some(h) => h,
            None => panic!("no composite {} ∘ {}", self.morphisms[g].id, self.morphisms[f].id),
        }
    }

    pub fn composition_table(&self) -> &HashMap<(usize, usize), usize> {
        &self.composition
    }

    /// Every identity, associativity and closure violation; empty iff this is a category.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let id = |f: usize| self.morphisms[f].id.clone();
        for (a, &i) in self.identities.iter().enumerate() {
            if self.morphisms[i].source != a || self.morphisms[i].target != a {
                report.push("identity is not an endomorphism", vec![self.objects[a].clone(), id(i)]);
            }
        }
        let mut entries: Vec<(&(usize, usize), &usize)> = self.composition.iter().collect();
        entries.sort();
        for (&(g, f), &h) in entries {
            if self.morphisms[f].target != self.morphisms[g].source {
                report.push("composite of a non-composable pair", vec![id(g), id(f)]);
            } else if self.morphisms[h].source != self.morphisms[f].source || self.morphisms[h].target != self.morphisms[g].target {
                report.push("composition closure", vec![id(g), id(f), id(h)]);
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].target] {
                if !self.composition.contains_key(&(g, f)) {
                    report.push("composition not total", vec![id(g), id(f)]);
                }
            }
        }
        if !report.is_empty() {
            return report;
        }
        for (f, m) in self.morphisms.iter().enumerate() {
            if self.compose(self.identities[m.target], f) != f || self.compose(f, self.identities[m.source]) != f {
                report.push("identity law", vec![id(f)]);
            }
        }
        for f in 0..self.morphisms.len() {
            for &g in &self.outgoing[self.morphisms[f].target] {
                let gf = self.compose(g, f);
                for &h in &self.outgoing[self.morphisms[g].target] {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        report.push("associativity", vec![id(h), id(g), id(f)]);
                    }
                }
            }
        }
        report
    }

    /// Split epimorphisms that are not isomorphisms.
    pub fn proper_split_epis(&self) -> Vec<bool> {
        (0..self.morphisms.len())
            .map(|f| {
                let (a, b) = (self.source(f), self.target(f));
                let sections: Vec<usize> = self.hom(b, a).filter(|&s| self.compose(f, s) == self.identity(b)).collect();
                !sections.is_empty() && !sections.iter().any(|&s| self.compose(s, f) == self.identity(a))
            })
            .collect()
    }

    /// The opposite category, with the same ids.
    pub fn opposite(&self) -> FiniteCategory {
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| Morphism {
                id: m.id.clone(),
                source: m.target,
                target: m.source,
            })
            .collect();
        let composition = self.composition.iter().map(|(&(g, f), &h)| ((f, g), h)).collect();
        FiniteCategory::from_parts(self.objects.clone(), morphisms, self.identities.clone(), composition, false)
            .expect("same endpoints")
    }
}

pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    c.validate()
}
