use std::collections::HashMap;

use super::{realize, CellSource, Complex, ComplexMap, Operator, Simplex};
use crate::error::{Budget, Result};

/// A strict colimit together with its canonical legs.
#[derive(Clone, Debug)]
pub struct Colimit<O> {
    pub complex: Complex<O>,
    pub legs: Vec<ComplexMap<O>>,
}

struct Classes<'a, O> {
    objects: &'a [(String, &'a Complex<O>)],
    /// all simplices per object and dimension
    keys: Vec<(usize, Simplex<O>)>,
    key_of: HashMap<(usize, Simplex<O>), usize>,
    parent: Vec<usize>,
    by_dim: Vec<Vec<usize>>,
}

impl<O: Operator> Classes<'_, O> {
    fn find(&self, mut k: usize) -> usize {
        while self.parent[k] != k {
            k = self.parent[k];
        }
        k
    }

    fn class_of(&self, obj: usize, s: &Simplex<O>) -> usize {
        self.find(self.key_of[&(obj, s.clone())])
    }
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let find = |parent: &mut [usize], mut k: usize| {
        while parent[k] != k {
            parent[k] = parent[parent[k]];
            k = parent[k];
        }
        k
    };
    let (ra, rb) = (find(parent, a), find(parent, b));
    // smallest key is the representative, which keeps labels deterministic
    if ra < rb {
        parent[rb] = ra;
    } else if rb < ra {
        parent[ra] = rb;
    }
}

impl<O: Operator> CellSource<O> for Classes<'_, O> {
    type Item = usize;

    fn candidates(&self, n: usize) -> Result<Vec<usize>> {
        let mut reps: Vec<usize> = self.by_dim.get(n).map_or(Vec::new(), |v| v.iter().map(|&k| self.find(k)).collect());
        reps.sort_unstable();
        reps.dedup();
        Ok(reps)
    }

    fn face(&self, x: &usize, _n: usize, slot: usize) -> usize {
        let (obj, s) = &self.keys[*x];
        let f = self.objects[*obj].1.face(s, slot);
        self.class_of(*obj, &f)
    }

    fn degeneracy(&self, x: &usize, n: usize, j: usize) -> usize {
        let (obj, s) = &self.keys[*x];
        let sigma = O::elementary_degeneracies(n).swap_remove(j);
        let d = self.objects[*obj].1.act(s, &sigma);
        self.class_of(*obj, &d)
    }

    fn label(&self, x: &usize) -> String {
        let (obj, s) = &self.keys[*x];
        format!("{}:{}", self.objects[*obj].0, self.objects[*obj].1.label(s))
    }
}

/// Colimit of a diagram of complexes presented by objects and arrows
/// `(source index, target index, map)`; identities may be omitted.
pub fn colimit<O: Operator>(
    objects: &[(String, &Complex<O>)],
    arrows: &[(usize, usize, &ComplexMap<O>)],
    budget: &Budget,
) -> Result<Colimit<O>> {
    let top = objects.iter().filter_map(|(_, c)| c.dim()).max().unwrap_or(0);
    let mut keys = Vec::new();
    let mut key_of = HashMap::new();
    let mut by_dim = vec![Vec::new(); top + 1];
    for (o, (_, c)) in objects.iter().enumerate() {
        for (n, slot) in by_dim.iter_mut().enumerate() {
            for s in c.simplices(n) {
                key_of.insert((o, s.clone()), keys.len());
                slot.push(keys.len());
                keys.push((o, s));
            }
        }
    }
    budget.spend(keys.len())?;
    let mut parent: Vec<usize> = (0..keys.len()).collect();
    for &(a, b, f) in arrows {
        for n in 0..=top {
            for s in objects[a].1.simplices(n) {
                let img = f.apply(&s);
                union(&mut parent, key_of[&(a, s)], key_of[&(b, img)]);
            }
        }
    }
    let classes = Classes {
        objects,
        keys,
        key_of,
        parent,
        by_dim,
    };
    let realized = realize(&classes, top, budget)?;
    let mut legs = Vec::new();
    for (o, (_, c)) in objects.iter().enumerate() {
        let rows = (0..=top)
            .map(|n| {
                c.cell_ids(n)
                    .map(|x| realized.normalize(&classes, &classes.class_of(o, &Simplex::nondegenerate(x)), n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        legs.push(ComplexMap::new(rows));
    }
    Ok(Colimit {
        complex: realized.complex,
        legs,
    })
}

impl<O: Operator> Colimit<O> {
    /// The map out of the colimit induced by a cocone `maps[k]: objects[k] -> target`.
    /// Fails if the cocone does not commute on some identified cells.
    pub fn induced(&self, objects: &[&Complex<O>], maps: &[&ComplexMap<O>], target: &Complex<O>) -> Result<ComplexMap<O>> {
        let mut rows: Vec<Vec<Option<Simplex<O>>>> =
            (0..self.complex.dim().map_or(0, |d| d + 1)).map(|n| vec![None; self.complex.cells(n).len()]).collect();
        for (k, obj) in objects.iter().enumerate() {
            for x in obj.all_cell_ids() {
                let leg = self.legs[k].image(x);
                if !leg.is_nondegenerate() {
                    continue;
                }
                let img = maps[k].image(x).clone();
                let slot = &mut rows[leg.cell.dim][leg.cell.index];
                match slot {
                    Some(prev) if *prev != img => {
                        return Err(crate::error::Error::invalid(format!(
                            "cocone does not commute at {}",
                            self.complex.id(leg.cell)
                        )))
                    }
                    _ => *slot = Some(img),
                }
            }
        }
        let rows = rows
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.expect("every class has a nondegenerate member")).collect())
            .collect();
        let map = ComplexMap::new(rows);
        map.validate(&self.complex, target).into_result("induced map")?;
        Ok(map)
    }
}
