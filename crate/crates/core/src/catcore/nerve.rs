use super::FiniteCategory;
use crate::complex::{realize, CellSource};
use crate::error::{Budget, Result};
use crate::simplicial::{Monotone, SimplicialSet};

/// A chain `a_0 -> a_1 -> ... -> a_n` as its start object and arrows.
type Chain = (usize, Vec<usize>);

struct Chains<'a> {
    c: &'a FiniteCategory,
    budget: &'a Budget,
}

impl Chains<'_> {
    fn end(&self, chain: &Chain) -> usize {
        chain.1.last().map_or(chain.0, |&f| self.c.target(f))
    }
}

impl CellSource<Monotone> for Chains<'_> {
    type Item = Chain;

    fn candidates(&self, n: usize) -> Result<Vec<Chain>> {
        let mut out: Vec<Chain> = (0..self.c.object_count()).map(|a| (a, Vec::new())).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for chain in &out {
                for &f in self.c.outgoing(self.end(chain)) {
                    if !self.c.is_identity(f) {
                        let mut arrows = chain.1.clone();
                        arrows.push(f);
                        next.push((chain.0, arrows));
                    }
                }
            }
            self.budget.spend(next.len())?;
            out = next;
        }
        Ok(out)
    }

    fn face(&self, x: &Chain, n: usize, slot: usize) -> Chain {
        let (start, arrows) = x;
        if n == 0 {
            return x.clone();
        }
        let mut arrows = arrows.clone();
        if slot == 0 {
            let f = arrows.remove(0);
            (self.c.target(f), arrows)
        } else if slot == n {
            arrows.pop();
            (*start, arrows)
        } else {
            let f = arrows.remove(slot - 1);
            arrows[slot - 1] = self.c.compose(arrows[slot - 1], f);
            (*start, arrows)
        }
    }

    fn degeneracy(&self, x: &Chain, _n: usize, j: usize) -> Chain {
        let (start, arrows) = x;
        let vertex = if j == 0 { *start } else { self.c.target(arrows[j - 1]) };
        let mut arrows = arrows.clone();
        arrows.insert(j, self.c.identity(vertex));
        (*start, arrows)
    }

    fn label(&self, x: &Chain) -> String {
        if x.1.is_empty() {
            return self.c.objects()[x.0].clone();
        }
        let ids: Vec<&str> = x.1.iter().map(|&f| self.c.morphisms()[f].id.as_str()).collect();
        format!("({})", ids.join(","))
    }
}

/// The nerve up to dimension `dmax`: nondegenerate `n`-cells are chains of `n` non-identity arrows.
pub fn nerve(c: &FiniteCategory, dmax: usize, budget: &Budget) -> Result<SimplicialSet> {
    Ok(realize(&Chains { c, budget }, dmax, budget)?.complex)
}
