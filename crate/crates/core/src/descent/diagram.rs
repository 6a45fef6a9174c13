use std::sync::Arc;

use crate::catcore::{CategoryBuilder, FiniteCategory};
use crate::complex::{colimit as strict_colimit, realize, CellSource, ComplexMap, Operator, Simplex};
use crate::error::{Budget, Error, Result};
use crate::simplicial::{Monotone, SimplicialMap, SimplicialSet};

/// A functor from a finite category to simplicial sets.
#[derive(Clone, Debug)]
pub struct DiagramSpec {
    pub shape: Arc<FiniteCategory>,
    pub objects: Vec<SimplicialSet>,
    /// one map per morphism of the shape, identities included
    pub maps: Vec<SimplicialMap>,
}

impl DiagramSpec {
    /// `maps` assigns every non-identity morphism by id; identities get identity maps.
    /// Functoriality is checked cellwise.
    pub fn new(shape: Arc<FiniteCategory>, objects: Vec<SimplicialSet>, maps: Vec<(String, SimplicialMap)>) -> Result<Self> {
        if objects.len() != shape.object_count() {
            return Err(Error::malformed(format!(
                "{} complexes for {} objects",
                objects.len(),
                shape.object_count()
            )));
        }
        let mut slots: Vec<Option<SimplicialMap>> = vec![None; shape.morphism_count()];
        for (id, m) in maps {
            let f = shape.morphism(&id).ok_or_else(|| Error::malformed(format!("no morphism {id}")))?;
            if slots[f].replace(m).is_some() {
                return Err(Error::malformed(format!("morphism {id} assigned twice")));
            }
        }
        let maps = slots
            .into_iter()
            .enumerate()
            .map(|(f, m)| match m {
                Some(m) => Ok(m),
                None if shape.is_identity(f) => Ok(ComplexMap::identity(&objects[shape.source(f)])),
                None => Err(Error::malformed(format!("morphism {} has no map", shape.morphisms()[f].id))),
            })
            .collect::<Result<Vec<_>>>()?;
        let d = DiagramSpec { shape, objects, maps };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let c = &self.shape;
        for (f, m) in self.maps.iter().enumerate() {
            let id = &c.morphisms()[f].id;
            m.validate(&self.objects[c.source(f)], &self.objects[c.target(f)])
                .into_result(&format!("map of {id}"))?;
            if c.is_identity(f) && *m != ComplexMap::identity(&self.objects[c.source(f)]) {
                return Err(Error::invalid(format!("identity {id} is not sent to an identity map")));
            }
        }
        for (&(g, f), &h) in c.composition_table() {
            let x = &self.objects[c.source(f)];
            if x.all_cell_ids().any(|cell| self.maps[g].apply(self.maps[f].image(cell)) != *self.maps[h].image(cell)) {
                return Err(Error::invalid(format!(
                    "maps do not compose: {} after {}",
                    c.morphisms()[g].id,
                    c.morphisms()[f].id
                )));
            }
        }
        Ok(())
    }

    /// `left <- apex -> right` over the span category `l <- c -> r`.
    pub fn span(apex: SimplicialSet, left: (SimplicialSet, SimplicialMap), right: (SimplicialSet, SimplicialMap)) -> Result<Self> {
        let shape = CategoryBuilder::new()
            .object("c")
            .object("l")
            .object("r")
            .morphism("f", "c", "l")
            .morphism("g", "c", "r")
            .build()?;
        DiagramSpec::new(
            Arc::new(shape),
            vec![apex, left.0, right.0],
            vec![("f".into(), left.1), ("g".into(), right.1)],
        )
    }
}

fn collapsed(op: &Monotone) -> Vec<bool> {
    let v: Vec<usize> = op.values().collect();
    v.windows(2).map(|w| w[0] == w[1]).collect()
}

/// An `n`-simplex of the diagonal: a chain `a0 -> ... -> an` (identities allowed) and an
/// `n`-simplex of the complex at `a0`.
type BarItem = (usize, Vec<usize>, Simplex<Monotone>);

struct BarCells<'a> {
    d: &'a DiagramSpec,
}

impl BarCells<'_> {
    fn chains(&self, n: usize) -> Vec<(usize, Vec<usize>)> {
        let c = &self.d.shape;
        let mut out: Vec<(usize, Vec<usize>)> = (0..c.object_count()).map(|a| (a, Vec::new())).collect();
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|(a, arrows)| {
                    let end = arrows.last().map_or(a, |&f| c.target(f));
                    c.outgoing(end).iter().map(move |&f| {
                        let mut next = arrows.clone();
                        next.push(f);
                        (a, next)
                    }).collect::<Vec<_>>()
                })
                .collect();
        }
        out
    }
}

impl CellSource<Monotone> for BarCells<'_> {
    type Item = BarItem;

    fn candidates(&self, n: usize) -> Result<Vec<BarItem>> {
        let c = &self.d.shape;
        let mut out = Vec::new();
        for (a, arrows) in self.chains(n) {
            for s in self.d.objects[a].simplices(n) {
                let col = collapsed(&s.op);
                if (0..n).any(|j| c.is_identity(arrows[j]) && col[j]) {
                    continue;
                }
                out.push((a, arrows.clone(), s));
            }
        }
        Ok(out)
    }

    fn face(&self, x: &BarItem, n: usize, slot: usize) -> BarItem {
        let c = &self.d.shape;
        let (a, arrows, s) = x;
        let f = self.d.objects[*a].face(s, slot);
        if slot == 0 {
            let first = arrows[0];
            (c.target(first), arrows[1..].to_vec(), self.d.maps[first].apply(&f))
        } else if slot == n {
            (*a, arrows[..n - 1].to_vec(), f)
        } else {
            let mut rest = arrows.clone();
            let g = rest.remove(slot);
            rest[slot - 1] = c.compose(g, arrows[slot - 1]);
            (*a, rest, f)
        }
    }

    fn degeneracy(&self, x: &BarItem, n: usize, j: usize) -> BarItem {
        let c = &self.d.shape;
        let (a, arrows, s) = x;
        let at = if j == 0 { *a } else { c.target(arrows[j - 1]) };
        let mut next = arrows.clone();
        next.insert(j, c.identity(at));
        let sigma = Monotone::elementary_degeneracies(n).swap_remove(j);
        (*a, next, self.d.objects[*a].act(s, &sigma))
    }

    fn label(&self, x: &BarItem) -> String {
        let c = &self.d.shape;
        let arrows: Vec<&str> = x.1.iter().map(|&f| c.morphisms()[f].id.as_str()).collect();
        format!("{}[{}]{}", c.objects()[x.0], arrows.join(","), self.d.objects[x.0].label(&x.2))
    }
}

/// Diagonal of the simplicial replacement `⊔_{a0 -> ... -> ap} X(a0)`, a model of the homotopy
/// colimit, up to dimension `d`.
pub fn bar_diagonal(d: &DiagramSpec, dim: usize, budget: &Budget) -> Result<SimplicialSet> {
    Ok(realize(&BarCells { d }, dim, budget)?.complex)
}

/// The strict colimit, cells named `object:cell`.
pub fn colimit(d: &DiagramSpec, budget: &Budget) -> Result<SimplicialSet> {
    let c = &d.shape;
    let objects: Vec<(String, &SimplicialSet)> = c.objects().iter().cloned().zip(d.objects.iter()).collect();
    let arrows: Vec<(usize, usize, &SimplicialMap)> = (0..c.morphism_count())
        .filter(|&f| !c.is_identity(f))
        .map(|f| (c.source(f), c.target(f), &d.maps[f]))
        .collect();
    Ok(strict_colimit(&objects, &arrows, budget)?.complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::catalog;
    use crate::invariants::homology;
    use crate::simplicial::{boundary, simplex};

    fn budget() -> Budget {
        Budget::new("cells", 2_000_000)
    }

    fn to_point(x: &SimplicialSet) -> SimplicialMap {
        ComplexMap::constant(x, simplex(0).cell_ids(0).next().unwrap())
    }

    fn collapse_span(n: usize) -> DiagramSpec {
        let b = boundary(n);
        let (l, r) = (to_point(&b), to_point(&b));
        DiagramSpec::span(b, (simplex(0), l), (simplex(0), r)).unwrap()
    }

    #[test]
    fn constant_diagram_on_a_point() {
        let x = boundary(2);
        let d = DiagramSpec::new(Arc::new(catalog::terminal()), vec![x.clone()], vec![]).unwrap();
        assert_eq!(homology(&bar_diagonal(&d, 3, &budget()).unwrap(), 2).unwrap(), homology(&x, 2).unwrap());
    }

    #[test]
    fn suspensions() {
        let d = collapse_span(1);
        assert_eq!(homology(&bar_diagonal(&d, 3, &budget()).unwrap(), 2).unwrap().betti(), vec![1, 1, 0]);
        assert_eq!(homology(&colimit(&d, &budget()).unwrap(), 2).unwrap().betti(), vec![1, 0, 0]);
        let d = collapse_span(2);
        assert_eq!(homology(&bar_diagonal(&d, 3, &budget()).unwrap(), 2).unwrap().betti(), vec![1, 0, 1]);
    }

    #[test]
    fn colimit_examples() {
        let d = DiagramSpec::new(Arc::new(catalog::discrete(&["a", "b"])), vec![simplex(0), simplex(0)], vec![]).unwrap();
        assert_eq!(colimit(&d, &budget()).unwrap().counts(), vec![2]);
        let b = boundary(1);
        let inc = b.inclusion_into(&simplex(1)).unwrap();
        let d = DiagramSpec::span(b.clone(), (simplex(0), to_point(&b)), (simplex(1), inc)).unwrap();
        let h = homology(&colimit(&d, &budget()).unwrap(), 1).unwrap();
        assert_eq!(h.betti(), vec![1, 1]);
        assert_eq!(homology(&bar_diagonal(&d, 2, &budget()).unwrap(), 1).unwrap(), h);
    }

    #[test]
    fn non_functorial_assignment_is_rejected() {
        let shape = Arc::new(catalog::poset(&["a", "b", "c"], &[("a", "b"), ("b", "c")]));
        let x = simplex(1);
        let v: Vec<_> = x.cell_ids(0).collect();
        let c0 = ComplexMap::constant(&x, v[0]);
        let c1 = ComplexMap::constant(&x, v[1]);
        let maps = vec![("a<b".to_string(), c0.clone()), ("b<c".to_string(), c0), ("a<c".to_string(), c1)];
        assert!(DiagramSpec::new(shape, vec![x.clone(), x.clone(), x], maps).is_err());
    }
}
