use super::{Monotone, SimplicialSet};
use crate::complex::{realize, CellSource, ComplexMap, Operator, Simplex};
use crate::error::{Budget, Result};

struct Pairs<'a> {
    left: &'a SimplicialSet,
    right: &'a SimplicialSet,
}

fn collapsed(op: &Monotone) -> Vec<bool> {
    let v: Vec<usize> = op.values().collect();
    v.windows(2).map(|w| w[0] == w[1]).collect()
}

impl CellSource<Monotone> for Pairs<'_> {
    type Item = (Simplex<Monotone>, Simplex<Monotone>);

    fn candidates(&self, n: usize) -> Result<Vec<Self::Item>> {
        let ls = self.left.simplices(n);
        let rs = self.right.simplices(n);
        let mut out = Vec::new();
        for a in &ls {
            let ca = collapsed(&a.op);
            for b in &rs {
                let cb = collapsed(&b.op);
                // a common collapsed position makes the pair degenerate
                if ca.iter().zip(&cb).any(|(x, y)| *x && *y) {
                    continue;
                }
                out.push((a.clone(), b.clone()));
            }
        }
        Ok(out)
    }

    fn face(&self, x: &Self::Item, _n: usize, slot: usize) -> Self::Item {
        (self.left.face(&x.0, slot), self.right.face(&x.1, slot))
    }

    fn degeneracy(&self, x: &Self::Item, n: usize, j: usize) -> Self::Item {
        let s = Monotone::elementary_degeneracies(n).swap_remove(j);
        (self.left.act(&x.0, &s), self.right.act(&x.1, &s))
    }

    fn label(&self, x: &Self::Item) -> String {
        format!("({},{})", self.left.label(&x.0), self.right.label(&x.1))
    }
}

/// The categorical product up to dimension `dmax`, with its two projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub complex: SimplicialSet,
    pub first: ComplexMap<Monotone>,
    pub second: ComplexMap<Monotone>,
}

pub fn product(x: &SimplicialSet, y: &SimplicialSet, dmax: usize, budget: &Budget) -> Result<Product> {
    let src = Pairs { left: x, right: y };
    let r = realize(&src, dmax, budget)?;
    let top = r.complex.dim().map_or(0, |d| d + 1);
    let mut first = vec![Vec::new(); top];
    let mut second = vec![Vec::new(); top];
    let mut items: Vec<_> = r.lookup.iter().collect();
    items.sort_by_key(|(_, c)| **c);
    for ((a, b), c) in items {
        debug_assert_eq!(first[c.dim].len(), c.index);
        first[c.dim].push(a.clone());
        second[c.dim].push(b.clone());
    }
    Ok(Product {
        complex: r.complex,
        first: ComplexMap::new(first),
        second: ComplexMap::new(second),
    })
}
