use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use super::{CellId, Complex, Operator, Simplex};
use crate::error::{Budget, Error, Result};
use crate::par;

/// A presheaf on the shape category given implicitly: its simplices, faces and
/// elementary degeneracies. [`realize`] turns it into normal form.
pub trait CellSource<O: Operator>: Sync {
    type Item: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    /// A superset of the nondegenerate `n`-simplices, in a deterministic order.
    fn candidates(&self, n: usize) -> Result<Vec<Self::Item>>;

    fn face(&self, x: &Self::Item, n: usize, slot: usize) -> Self::Item;

    /// Applies the `j`-th elementary degeneracy `(n+1) -> n` to an `n`-simplex.
    fn degeneracy(&self, x: &Self::Item, n: usize, j: usize) -> Self::Item;

    fn label(&self, x: &Self::Item) -> String;
}

/// A realized presheaf together with the lookup from items to cells.
#[derive(Debug)]
pub struct Realized<O, T> {
    pub complex: Complex<O>,
    pub lookup: HashMap<T, CellId>,
}

fn degenerate_part<O: Operator, S: CellSource<O>>(src: &S, x: &S::Item, n: usize) -> Option<(usize, S::Item)> {
    if n == 0 {
        return None;
    }
    (0..n).find_map(|j| {
        let w = src.face(x, n, O::section_slot(n - 1, j));
        (src.degeneracy(&w, n - 1, j) == *x).then_some((j, w))
    })
}

impl<O: Operator, T: Clone + Eq + Hash + Debug> Realized<O, T> {
    /// Writes an `n`-dimensional item as a degeneracy of a realized cell.
    pub fn normalize<S: CellSource<O, Item = T>>(&self, src: &S, x: &T, n: usize) -> Result<Simplex<O>> {
        if let Some(&c) = self.lookup.get(x) {
            return Ok(Simplex::nondegenerate(c));
        }
        match degenerate_part(src, x, n) {
            Some((j, w)) => {
                let inner = self.normalize(src, &w, n - 1)?;
                let sigma = O::elementary_degeneracies(n - 1).swap_remove(j);
                Ok(Simplex {
                    cell: inner.cell,
                    op: inner.op.after(&sigma),
                })
            }
            None => Err(Error::invalid(format!(
                "{n}-simplex {} is nondegenerate but was not enumerated",
                src.label(x)
            ))),
        }
    }
}

pub fn realize<O: Operator, S: CellSource<O>>(src: &S, dmax: usize, budget: &Budget) -> Result<Realized<O, S::Item>> {
    let mut out = Realized {
        complex: Complex::new(),
        lookup: HashMap::new(),
    };
    for n in 0..=dmax {
        let mut cands = src.candidates(n)?;
        let mut seen = std::collections::HashSet::new();
        cands.retain(|c| seen.insert(c.clone()));
        let nondeg: Vec<S::Item> = par::map(&cands, |x| degenerate_part(src, x, n).is_none())
            .into_iter()
            .zip(cands)
            .filter_map(|(keep, x)| keep.then_some(x))
            .collect();
        budget.spend(nondeg.len())?;
        let faces = par::try_map(&nondeg, |x| {
            (0..O::face_count(n))
                .map(|slot| out.normalize(src, &src.face(x, n, slot), n - 1))
                .collect::<Result<Vec<_>>>()
        })?;
        for (x, faces) in nondeg.into_iter().zip(faces) {
            let c = out.complex.add_cell(n, src.label(&x), faces)?;
            out.lookup.insert(x, c);
        }
    }
    Ok(out)
}
