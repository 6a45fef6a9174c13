use std::collections::BTreeSet;

use crate::complex::{realize, CellId, CellSource, Operator, Simplex};
use crate::error::{Budget, Error, Result};
use crate::simplicial::{Monotone, SimplicialSet};

/// A finite family of subcomplexes of `ambient`, each the face closure of its generating cells.
#[derive(Clone, Debug)]
pub struct CoverSpec {
    pub ambient: SimplicialSet,
    pub members: Vec<BTreeSet<CellId>>,
    /// the union is everything; otherwise `uncovered` names the first missing cell
    pub covering: bool,
    pub uncovered: Option<String>,
}

/// Face closure of a set of cells.
pub fn closure<O: Operator>(x: &crate::complex::Complex<O>, generators: &[CellId]) -> BTreeSet<CellId> {
    let mut keep = BTreeSet::new();
    let mut stack = generators.to_vec();
    while let Some(c) = stack.pop() {
        if keep.insert(c) {
            stack.extend(x.cell(c).faces.iter().map(|f| f.cell));
        }
    }
    keep
}

/// Resolves cell ids in `x`.
pub fn cells_by_id<O: Operator>(x: &crate::complex::Complex<O>, ids: &[String]) -> Result<Vec<CellId>> {
    ids.iter()
        .map(|id| x.find(id).ok_or_else(|| Error::malformed(format!("no cell {id}"))))
        .collect()
}

impl CoverSpec {
    pub fn new(ambient: SimplicialSet, generators: &[Vec<CellId>]) -> Self {
        let members: Vec<BTreeSet<CellId>> = generators.iter().map(|g| closure(&ambient, g)).collect();
        let uncovered = ambient
            .all_cell_ids()
            .find(|c| !members.iter().any(|m| m.contains(c)))
            .map(|c| ambient.id(c).to_string());
        CoverSpec {
            ambient,
            members,
            covering: uncovered.is_none(),
            uncovered,
        }
    }

    pub fn from_ids(ambient: SimplicialSet, generators: &[Vec<String>]) -> Result<Self> {
        let g = generators.iter().map(|ids| cells_by_id(&ambient, ids)).collect::<Result<Vec<_>>>()?;
        Ok(CoverSpec::new(ambient, &g))
    }

    pub fn member(&self, i: usize) -> SimplicialSet {
        self.ambient.restrict_to(&self.members[i]).0
    }
}

fn collapsed(op: &Monotone) -> Vec<bool> {
    let v: Vec<usize> = op.values().collect();
    v.windows(2).map(|w| w[0] == w[1]).collect()
}

/// Diagonal of the Čech object: an `n`-simplex is a tuple of `n + 1` member indices with an
/// `n`-simplex lying in all of them. It is a subcomplex of (indices, codiscretely) × X.
struct CechCells<'a> {
    cover: &'a CoverSpec,
}

impl CellSource<Monotone> for CechCells<'_> {
    type Item = (Vec<usize>, Simplex<Monotone>);

    fn candidates(&self, n: usize) -> Result<Vec<Self::Item>> {
        let x = &self.cover.ambient;
        let mut out = Vec::new();
        for s in x.simplices(n) {
            let within: Vec<usize> = (0..self.cover.members.len()).filter(|&i| self.cover.members[i].contains(&s.cell)).collect();
            let collapsed = collapsed(&s.op);
            let mut tuple = Vec::with_capacity(n + 1);
            extend(&within, n + 1, &collapsed, &mut tuple, &mut |t| out.push((t.to_vec(), s.clone())));
        }
        Ok(out)
    }

    fn face(&self, x: &Self::Item, _n: usize, slot: usize) -> Self::Item {
        let mut t = x.0.clone();
        t.remove(slot);
        (t, self.cover.ambient.face(&x.1, slot))
    }

    fn degeneracy(&self, x: &Self::Item, n: usize, j: usize) -> Self::Item {
        let mut t = x.0.clone();
        t.insert(j, t[j]);
        let s = Monotone::elementary_degeneracies(n).swap_remove(j);
        (t, self.cover.ambient.act(&x.1, &s))
    }

    fn label(&self, x: &Self::Item) -> String {
        let t: Vec<String> = x.0.iter().map(|i| i.to_string()).collect();
        format!("{}|{}", t.join("-"), self.cover.ambient.label(&x.1))
    }
}

/// Tuples over `within`, skipping those that repeat an index where the simplex is collapsed
/// (those pairs are degenerate).
fn extend(within: &[usize], len: usize, collapsed: &[bool], tuple: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if tuple.len() == len {
        emit(tuple);
        return;
    }
    for &i in within {
        if let Some(&last) = tuple.last() {
            if last == i && collapsed[tuple.len() - 1] {
                continue;
            }
        }
        tuple.push(i);
        extend(within, len, collapsed, tuple, emit);
        tuple.pop();
    }
}

/// Diagonal of the Čech nerve of a covering family, up to dimension `d`.
pub fn cech_diagonal(cover: &CoverSpec, d: usize, budget: &Budget) -> Result<SimplicialSet> {
    if let Some(c) = &cover.uncovered {
        return Err(Error::invalid(format!("uncovered cell: {c}")));
    }
    Ok(realize(&CechCells { cover }, d, budget)?.complex)
}
