use std::collections::{HashMap, HashSet};

use super::{CellId, Complex, Operator, Simplex};
use crate::error::{Budget, Result};
use crate::par;
use crate::validation::ValidationReport;

/// A map of complexes, given by the image of every nondegenerate source cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexMap<O> {
    images: Vec<Vec<Simplex<O>>>,
}

impl<O: Operator> ComplexMap<O> {
    pub fn new(images: Vec<Vec<Simplex<O>>>) -> Self {
        let mut images = images;
        while images.last().is_some_and(Vec::is_empty) {
            images.pop();
        }
        ComplexMap { images }
    }

    pub fn identity(x: &Complex<O>) -> Self {
        let top = x.dim().map_or(0, |d| d + 1);
        Self::new((0..top).map(|n| x.cell_ids(n).map(Simplex::nondegenerate).collect()).collect())
    }

    /// Constant map onto a vertex.
    pub fn constant(x: &Complex<O>, vertex: CellId) -> Self {
        let top = x.dim().map_or(0, |d| d + 1);
        Self::new(
            (0..top)
                .map(|n| {
                    x.cell_ids(n)
                        .map(|_| Simplex {
                            cell: vertex,
                            op: O::degeneracies(n, 0).swap_remove(0),
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn image(&self, c: CellId) -> &Simplex<O> {
        &self.images[c.dim][c.index]
    }

    pub fn apply(&self, s: &Simplex<O>) -> Simplex<O> {
        let img = self.image(s.cell);
        Simplex {
            cell: img.cell,
            op: img.op.after(&s.op),
        }
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &ComplexMap<O>) -> ComplexMap<O> {
        ComplexMap::new(
            self.images
                .iter()
                .map(|row| row.iter().map(|s| then.apply(s)).collect())
                .collect(),
        )
    }

    /// Dimensions line up and the map commutes with every face.
    pub fn validate(&self, source: &Complex<O>, target: &Complex<O>) -> ValidationReport {
        let mut report = ValidationReport::new();
        let top = source.dim().map_or(0, |d| d + 1);
        for n in 0..top {
            if self.images.get(n).map_or(0, Vec::len) != source.cells(n).len() {
                report.push("map shape", vec![format!("dimension {n}")]);
                return report;
            }
        }
        if self.images.len() > top {
            report.push("map shape", vec!["extra images".into()]);
            return report;
        }
        for c in source.all_cell_ids() {
            let img = self.image(c);
            let exists = target.cells(img.cell.dim).len() > img.cell.index;
            if img.dim() != c.dim || !exists || img.op.target() != img.cell.dim || !img.op.is_degeneracy() {
                report.push("image dimension", vec![source.id(c).to_string()]);
                continue;
            }
        }
        if !report.is_empty() {
            return report;
        }
        for c in source.all_cell_ids() {
            let img = self.image(c);
            for (slot, f) in source.cell(c).faces.iter().enumerate() {
                if self.apply(f) != target.face(img, slot) {
                    report.push(
                        "commutes with faces",
                        vec![source.id(c).to_string(), O::slot_label(c.dim, slot)],
                    );
                }
            }
        }
        report
    }

    /// Injective on simplices: nondegenerate cells go to distinct nondegenerate cells.
    pub fn is_mono(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images
            .iter()
            .flatten()
            .all(|s| s.is_nondegenerate() && seen.insert(s.cell))
    }

    pub fn images(&self) -> &[Vec<Simplex<O>>] {
        &self.images
    }

    /// Canonical `cell=ref` listing in source order.
    pub fn describe(&self, source: &Complex<O>, target: &Complex<O>) -> Vec<String> {
        source
            .all_cell_ids()
            .map(|c| format!("{}={}", source.id(c), target.reference(self.image(c))))
            .collect()
    }
}

/// Constrains a search to maps `h` with `over.0 ∘ h == over.1` (a map into the base of `over.0`).
pub struct Over<'a, O> {
    pub projection: &'a ComplexMap<O>,
    pub required: &'a ComplexMap<O>,
}

/// Backtracking search for maps `source -> target`.
///
/// Cells are assigned so that constraints bite early: fixed cells first, then
/// vertices by how many placed neighbours they have (ties by id), each followed
/// by every higher cell whose faces are all placed. Candidates are tried in the
/// order (dimension of the target cell, target id, operator). Full enumerations
/// are returned in lexicographic order of the images listed by (dimension, id).
pub struct MapSearch<'a, O> {
    source: &'a Complex<O>,
    target: &'a Complex<O>,
    fixed: HashMap<CellId, Simplex<O>>,
    over: Option<Over<'a, O>>,
    by_id: Vec<CellId>,
    by_first_face: Vec<HashMap<Simplex<O>, Vec<Simplex<O>>>>,
    vertices: Vec<Simplex<O>>,
}

type Partial<O> = Vec<Vec<Option<Simplex<O>>>>;

impl<'a, O: Operator> MapSearch<'a, O> {
    pub fn new(source: &'a Complex<O>, target: &'a Complex<O>) -> Self {
        let mut by_id: Vec<CellId> = source.all_cell_ids().collect();
        by_id.sort_by(|a, b| (a.dim, source.id(*a)).cmp(&(b.dim, source.id(*b))));
        let top = source.dim().unwrap_or(0);
        let sort_key = |s: &Simplex<O>| (s.cell.dim, target.id(s.cell).to_string(), s.op.clone());
        let mut vertices = target.simplices(0);
        vertices.sort_by_key(sort_key);
        let mut by_first_face = vec![HashMap::new()];
        for n in 1..=top {
            let mut all = target.simplices(n);
            all.sort_by_key(sort_key);
            let mut idx: HashMap<Simplex<O>, Vec<Simplex<O>>> = HashMap::new();
            for s in all {
                idx.entry(target.face(&s, 0)).or_default().push(s);
            }
            by_first_face.push(idx);
        }
        MapSearch {
            source,
            target,
            fixed: HashMap::new(),
            over: None,
            by_id,
            by_first_face,
            vertices,
        }
    }

    pub fn fix(mut self, cell: CellId, image: Simplex<O>) -> Self {
        self.fixed.insert(cell, image);
        self
    }

    pub fn over(mut self, projection: &'a ComplexMap<O>, required: &'a ComplexMap<O>) -> Self {
        self.over = Some(Over { projection, required });
        self
    }

    /// The assignment order described on the type.
    fn plan(&self) -> Vec<CellId> {
        let rank: HashMap<CellId, usize> = self.by_id.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut faces: HashMap<CellId, Vec<CellId>> = HashMap::new();
        let mut cofaces: HashMap<CellId, Vec<CellId>> = HashMap::new();
        for &c in &self.by_id {
            let mut fs: Vec<CellId> = self.source.cell(c).faces.iter().map(|f| f.cell).collect();
            fs.sort();
            fs.dedup();
            for &f in &fs {
                cofaces.entry(f).or_default().push(c);
            }
            faces.insert(c, fs);
        }
        let mut planner = Planner {
            faces: &faces,
            cofaces: &cofaces,
            rank: &rank,
            placed: HashSet::new(),
            order: Vec::with_capacity(self.by_id.len()),
            weight: HashMap::new(),
        };
        let mut fixed: Vec<CellId> = self.fixed.keys().copied().collect();
        fixed.sort_by_key(|c| rank[c]);
        for c in fixed {
            // everything below a fixed cell is determined by it
            let mut stack = vec![c];
            let mut closure = Vec::new();
            while let Some(x) = stack.pop() {
                closure.push(x);
                stack.extend(faces[&x].iter().copied());
            }
            closure.sort_by_key(|c| (c.dim, rank[c]));
            for x in closure {
                planner.place(x);
            }
        }
        let vertices: Vec<CellId> = self.by_id.iter().copied().filter(|c| c.dim == 0).collect();
        loop {
            let next = vertices
                .iter()
                .filter(|v| !planner.placed.contains(*v))
                .max_by_key(|v| (planner.weight.get(*v).copied().unwrap_or(0), std::cmp::Reverse(rank[*v])));
            match next {
                Some(&v) => planner.place(v),
                None => break,
            }
        }
        debug_assert_eq!(planner.order.len(), self.by_id.len());
        planner.order
    }

    fn apply_partial(partial: &Partial<O>, s: &Simplex<O>) -> Simplex<O> {
        let img = partial[s.cell.dim][s.cell.index].as_ref().expect("faces assigned first");
        Simplex {
            cell: img.cell,
            op: img.op.after(&s.op),
        }
    }

    fn admissible(&self, partial: &Partial<O>, c: CellId, cand: &Simplex<O>) -> bool {
        if cand.dim() != c.dim {
            return false;
        }
        for (slot, f) in self.source.cell(c).faces.iter().enumerate() {
            if Self::apply_partial(partial, f) != self.target.face(cand, slot) {
                return false;
            }
        }
        if let Some(over) = &self.over {
            if over.projection.apply(cand) != *over.required.image(c) {
                return false;
            }
        }
        true
    }

    fn candidates(&self, partial: &Partial<O>, c: CellId) -> Vec<Simplex<O>> {
        if let Some(img) = self.fixed.get(&c) {
            return if self.admissible(partial, c, img) {
                vec![img.clone()]
            } else {
                Vec::new()
            };
        }
        let pool: &[Simplex<O>] = if c.dim == 0 {
            &self.vertices
        } else {
            let f0 = Self::apply_partial(partial, &self.source.cell(c).faces[0]);
            match self.by_first_face[c.dim].get(&f0) {
                Some(v) => v,
                None => return Vec::new(),
            }
        };
        pool.iter().filter(|s| self.admissible(partial, c, s)).cloned().collect()
    }

    fn empty_partial(&self) -> Partial<O> {
        let top = self.source.dim().map_or(0, |d| d + 1);
        (0..top).map(|n| vec![None; self.source.cells(n).len()]).collect()
    }

    fn finish(&self, partial: &Partial<O>) -> ComplexMap<O> {
        ComplexMap::new(
            partial
                .iter()
                .map(|row| row.iter().map(|s| s.clone().expect("complete")).collect())
                .collect(),
        )
    }

    fn dfs(
        &self,
        order: &[CellId],
        pos: usize,
        partial: &mut Partial<O>,
        out: &mut Vec<ComplexMap<O>>,
        limit: Option<usize>,
        budget: &Budget,
    ) -> Result<()> {
        if limit.is_some_and(|l| out.len() >= l) {
            return Ok(());
        }
        budget.spend(1)?;
        if pos == order.len() {
            // stored solutions are charged by size so the budget bounds memory
            budget.spend(self.by_id.len())?;
            out.push(self.finish(partial));
            return Ok(());
        }
        let c = order[pos];
        for cand in self.candidates(partial, c) {
            partial[c.dim][c.index] = Some(cand);
            self.dfs(order, pos + 1, partial, out, limit, budget)?;
            if limit.is_some_and(|l| out.len() >= l) {
                break;
            }
        }
        partial[c.dim][c.index] = None;
        Ok(())
    }

    /// All solutions (or the first `limit`) in deterministic order.
    pub fn run(&self, limit: Option<usize>, budget: &Budget) -> Result<Vec<ComplexMap<O>>> {
        let order = self.plan();
        let mut partial = self.empty_partial();
        // walk the forced prefix, then fan out at the first real branching point
        let mut pos = 0;
        while pos < order.len() {
            budget.spend(1)?;
            let c = order[pos];
            let cands = self.candidates(&partial, c);
            match cands.len() {
                0 => return Ok(Vec::new()),
                1 => {
                    partial[c.dim][c.index] = cands.into_iter().next();
                    pos += 1;
                }
                _ => {
                    let branches = par::try_map(&cands, |cand| {
                        let mut local = partial.clone();
                        local[c.dim][c.index] = Some(cand.clone());
                        let mut out = Vec::new();
                        self.dfs(&order, pos + 1, &mut local, &mut out, limit, budget)?;
                        Ok(out)
                    })?;
                    let mut all: Vec<ComplexMap<O>> = branches.into_iter().flatten().collect();
                    match limit {
                        Some(l) => all.truncate(l),
                        None => self.sort(&mut all),
                    }
                    return Ok(all);
                }
            }
        }
        Ok(vec![self.finish(&partial)])
    }

    fn sort(&self, maps: &mut [ComplexMap<O>]) {
        let key = |m: &ComplexMap<O>| -> Vec<(usize, String, O)> {
            self.by_id
                .iter()
                .map(|c| {
                    let s = m.image(*c);
                    (s.cell.dim, self.target.id(s.cell).to_string(), s.op.clone())
                })
                .collect()
        };
        maps.sort_by_cached_key(key);
    }

    pub fn first(&self, budget: &Budget) -> Result<Option<ComplexMap<O>>> {
        Ok(self.run(Some(1), budget)?.into_iter().next())
    }
}

/// Places cells so that each cell follows its faces and higher cells come as early as possible.
struct Planner<'p> {
    faces: &'p HashMap<CellId, Vec<CellId>>,
    cofaces: &'p HashMap<CellId, Vec<CellId>>,
    rank: &'p HashMap<CellId, usize>,
    placed: HashSet<CellId>,
    order: Vec<CellId>,
    /// placed-neighbour counts of vertices
    weight: HashMap<CellId, usize>,
}

impl Planner<'_> {
    fn place(&mut self, c: CellId) {
        if self.placed.contains(&c) || !self.faces[&c].iter().all(|f| self.placed.contains(f)) {
            return;
        }
        self.placed.insert(c);
        self.order.push(c);
        let ups = self.cofaces.get(&c).cloned().unwrap_or_default();
        if c.dim == 0 {
            for &up in &ups {
                if up.dim == 1 {
                    for &v in &self.faces[&up] {
                        *self.weight.entry(v).or_default() += 1;
                    }
                }
            }
        }
        let mut ready: Vec<CellId> = ups
            .into_iter()
            .filter(|up| !self.placed.contains(up) && self.faces[up].iter().all(|f| self.placed.contains(f)))
            .collect();
        ready.sort_by_key(|c| self.rank[c]);
        for up in ready {
            self.place(up);
        }
    }
}

/// Every map `x -> y`, in deterministic lexicographic order.
pub fn enumerate_maps<O: Operator>(x: &Complex<O>, y: &Complex<O>, budget: &Budget) -> Result<Vec<ComplexMap<O>>> {
    MapSearch::new(x, y).run(None, budget)
}
