//! Barycentric subdivision.
//!
//! A simplex of `Sd X` is a nondegenerate cell `x` together with a weakly
//! increasing chain of vertex subsets of its simplex whose top is the whole
//! vertex set. Chains whose top shrinks are pushed into the face they span.

use super::{Monotone, SimplicialSet};
use crate::complex::{realize, CellId, CellSource, ComplexMap, Operator, Realized, Simplex};
use crate::error::{Budget, Result};

pub type Chain = Vec<u32>;

#[derive(Clone, Debug)]
pub struct SdSource {
    base: SimplicialSet,
}

fn full(n: usize) -> u32 {
    ((1u64 << (n + 1)) - 1) as u32
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn subset_label(mask: u32) -> String {
    super::generators::subset_id(&members(mask))
}

impl SdSource {
    /// Pushes `(x, chain)` down until the chain's top is the full vertex set.
    pub fn canonical(&self, x: CellId, chain: &[u32]) -> (CellId, Chain) {
        let top = *chain.last().expect("non-empty chain");
        if top == full(x.dim) {
            return (x, chain.to_vec());
        }
        let verts = members(top);
        let incl = Monotone::inclusion(x.dim, &verts).expect("sorted subset");
        let s = self.base.resolve(x, incl);
        (s.cell, push_chain(&s.op, &verts, chain))
    }

    /// Image of `(x, chain)` under a map sending `x` to `img` (a degeneracy of a cell).
    fn along(img: &Simplex<Monotone>, chain: &[u32]) -> (CellId, Chain) {
        let n = img.op.source();
        let all: Vec<usize> = (0..=n).collect();
        (img.cell, push_chain(&img.op, &all, chain))
    }
}

/// Re-expresses each subset through `op` after locating it in `verts`.
fn push_chain(op: &Monotone, verts: &[usize], chain: &[u32]) -> Chain {
    chain
        .iter()
        .map(|&m| {
            members(m)
                .into_iter()
                .map(|v| {
                    let pos = verts.iter().position(|&w| w == v).expect("subset of the top");
                    1u32 << op.value(pos)
                })
                .fold(0, |a, b| a | b)
        })
        .collect()
}

fn strict_chains(n: usize, len: usize) -> Vec<Chain> {
    // chains F0 < F1 < ... < F_{len-1} = full(n)
    let mut out = Vec::new();
    let mut cur = vec![full(n)];
    fn rec(len: usize, cur: &mut Vec<u32>, out: &mut Vec<Chain>) {
        if cur.len() == len {
            let mut c = cur.clone();
            c.reverse();
            out.push(c);
            return;
        }
        let top = *cur.last().unwrap();
        // proper non-empty subsets of `top`
        let mut sub = (top - 1) & top;
        while sub > 0 {
            cur.push(sub);
            rec(len, cur, out);
            cur.pop();
            sub = (sub - 1) & top;
        }
    }
    rec(len, &mut cur, &mut out);
    out.sort();
    out
}

impl CellSource<Monotone> for SdSource {
    type Item = (CellId, Chain);

    fn candidates(&self, n: usize) -> Result<Vec<Self::Item>> {
        let mut out = Vec::new();
        for x in self.base.all_cell_ids() {
            if x.dim + 1 < n + 1 {
                continue;
            }
            for chain in strict_chains(x.dim, n + 1) {
                out.push((x, chain));
            }
        }
        Ok(out)
    }

    fn face(&self, item: &Self::Item, _n: usize, slot: usize) -> Self::Item {
        let mut chain = item.1.clone();
        chain.remove(slot);
        self.canonical(item.0, &chain)
    }

    fn degeneracy(&self, item: &Self::Item, _n: usize, j: usize) -> Self::Item {
        let mut chain = item.1.clone();
        chain.insert(j, chain[j]);
        (item.0, chain)
    }

    fn label(&self, item: &Self::Item) -> String {
        let parts: Vec<String> = item.1.iter().map(|&m| subset_label(m)).collect();
        format!("{}:{}", self.base.id(item.0), parts.join("/"))
    }
}

/// `Sd X` together with what is needed to subdivide maps and to write down the last-vertex map.
#[derive(Debug)]
pub struct Subdivision {
    pub source: SdSource,
    pub realized: Realized<Monotone, (CellId, Chain)>,
}

impl Subdivision {
    pub fn new(x: &SimplicialSet) -> Result<Self> {
        let source = SdSource { base: x.clone() };
        let top = x.dim().unwrap_or(0);
        let realized = realize(&source, top, &Budget::unlimited("subdivision"))?;
        Ok(Subdivision { source, realized })
    }

    pub fn complex(&self) -> &SimplicialSet {
        &self.realized.complex
    }

    pub fn base(&self) -> &SimplicialSet {
        &self.source.base
    }

    fn items(&self) -> Vec<((CellId, Chain), CellId)> {
        let mut items: Vec<_> = self.realized.lookup.iter().map(|(k, v)| (k.clone(), *v)).collect();
        items.sort_by_key(|(_, c)| *c);
        items
    }

    /// `Sd f : Sd X -> Sd Y` for `f : X -> Y`, where `self` subdivides X.
    pub fn map(&self, f: &ComplexMap<Monotone>, target: &Subdivision) -> Result<ComplexMap<Monotone>> {
        let mut rows: Vec<Vec<Simplex<Monotone>>> = vec![Vec::new(); self.complex().dim().map_or(0, |d| d + 1)];
        for ((x, chain), c) in self.items() {
            let (y, pushed) = SdSource::along(f.image(x), &chain);
            let (y, pushed) = target.source.canonical(y, &pushed);
            rows[c.dim].push(target.realized.normalize(&target.source, &(y, pushed), c.dim)?);
        }
        Ok(ComplexMap::new(rows))
    }

    /// The last-vertex map `Sd X -> X`: a flag goes to the simplex on the largest vertex of each entry.
    pub fn last_vertex(&self) -> ComplexMap<Monotone> {
        let mut rows: Vec<Vec<Simplex<Monotone>>> = vec![Vec::new(); self.complex().dim().map_or(0, |d| d + 1)];
        for ((x, chain), c) in self.items() {
            let maxes: Vec<usize> = chain.iter().map(|&m| 31 - m.leading_zeros() as usize).collect();
            let theta = Monotone::new(x.dim, maxes).expect("maxima increase along a chain");
            rows[c.dim].push(self.source.base.resolve(x, theta));
        }
        ComplexMap::new(rows)
    }
}

/// Barycentric subdivision of a finite complex.
pub fn sd(x: &SimplicialSet) -> Result<SimplicialSet> {
    Ok(Subdivision::new(x)?.realized.complex)
}
