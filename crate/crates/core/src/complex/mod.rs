//! Finite presheaves on a shape category, stored in Eilenberg–Zilber normal
//! form: only nondegenerate cells are kept, and each face slot points at a
//! degeneracy of a nondegenerate cell.
//!
//! The same machinery serves simplicial sets ([`crate::simplicial::Monotone`])
//! and cubical sets ([`crate::cubical::CubeMorphism`]).

pub mod colimit;
pub mod map;
mod op;
pub mod realize;

use std::collections::{BTreeSet, HashMap};

pub use colimit::{colimit, Colimit};
pub use map::{enumerate_maps, ComplexMap, MapSearch};
pub use op::Operator;
pub use realize::{realize, CellSource, Realized};

use crate::error::{Error, Result};
use crate::validation::ValidationReport;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

/// The simplex `cell · op`; its dimension is `op.source()`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex<O> {
    pub cell: CellId,
    pub op: O,
}

impl<O: Operator> Simplex<O> {
    pub fn nondegenerate(cell: CellId) -> Self {
        Simplex {
            cell,
            op: O::identity(cell.dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.source()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.op.is_identity()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell<O> {
    pub id: String,
    pub faces: Vec<Simplex<O>>,
}

#[derive(Clone, Debug)]
pub struct Complex<O> {
    cells: Vec<Vec<Cell<O>>>,
    index: HashMap<String, CellId>,
}

impl<O: Operator> PartialEq for Complex<O> {
    fn eq(&self, other: &Self) -> bool {
        let trim = |c: &[Vec<Cell<O>>]| c.iter().rposition(|v| !v.is_empty()).map_or(0, |p| p + 1);
        let (a, b) = (trim(&self.cells), trim(&other.cells));
        a == b && self.cells[..a] == other.cells[..b]
    }
}

impl<O: Operator> Eq for Complex<O> {}

impl<O: Operator> Default for Complex<O> {
    fn default() -> Self {
        Complex {
            cells: Vec::new(),
            index: HashMap::new(),
        }
    }
}

pub fn check_cell_id(id: &str) -> Result<()> {
    if id.is_empty() || id.contains('.') || id.chars().any(char::is_whitespace) {
        return Err(Error::malformed(format!(
            "cell id {id:?} must be non-empty without whitespace or '.'"
        )));
    }
    Ok(())
}

impl<O: Operator> Complex<O> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a nondegenerate cell. Faces must already exist; laws are left to [`Complex::validate`].
    pub fn add_cell(&mut self, dim: usize, id: impl Into<String>, faces: Vec<Simplex<O>>) -> Result<CellId> {
        let id = id.into();
        check_cell_id(&id)?;
        if self.index.contains_key(&id) {
            return Err(Error::malformed(format!("duplicate cell id {id}")));
        }
        if faces.len() != O::face_count(dim) {
            return Err(Error::malformed(format!(
                "cell {id} of dimension {dim} needs {} faces, got {}",
                O::face_count(dim),
                faces.len()
            )));
        }
        for (slot, f) in faces.iter().enumerate() {
            let ok = f.dim() + 1 == dim
                && f.op.target() == f.cell.dim
                && f.op.is_degeneracy()
                && self.cells.get(f.cell.dim).is_some_and(|v| f.cell.index < v.len());
            if !ok {
                return Err(Error::malformed(format!(
                    "face {} of cell {id} does not reference an existing cell of the right dimension",
                    O::slot_label(dim, slot)
                )));
            }
        }
        if self.cells.len() <= dim {
            self.cells.resize_with(dim + 1, Vec::new);
        }
        let cid = CellId {
            dim,
            index: self.cells[dim].len(),
        };
        self.cells[dim].push(Cell { id: id.clone(), faces });
        self.index.insert(id, cid);
        Ok(cid)
    }

    /// Highest dimension holding a cell.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().rposition(|v| !v.is_empty())
    }

    pub fn is_empty(&self) -> bool {
        self.dim().is_none()
    }

    pub fn cells(&self, n: usize) -> &[Cell<O>] {
        self.cells.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn cell(&self, id: CellId) -> &Cell<O> {
        &self.cells[id.dim][id.index]
    }

    pub fn cell_ids(&self, n: usize) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells(n).len()).map(move |index| CellId { dim: n, index })
    }

    pub fn all_cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).flat_map(move |n| self.cell_ids(n))
    }

    pub fn find(&self, id: &str) -> Option<CellId> {
        self.index.get(id).copied()
    }

    pub fn id(&self, c: CellId) -> &str {
        &self.cell(c).id
    }

    /// Nondegenerate cell counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        let top = self.dim().map_or(0, |d| d + 1);
        (0..top).map(|n| self.cells(n).len()).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(n, &c)| if n % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// `cell · op`, reduced to normal form through the stored faces.
    pub fn resolve(&self, mut cell: CellId, mut op: O) -> Simplex<O> {
        debug_assert_eq!(op.target(), cell.dim);
        while let Some((slot, rest)) = op.peel_face() {
            let f = &self.cell(cell).faces[slot];
            op = f.op.after(&rest);
            cell = f.cell;
        }
        Simplex { cell, op }
    }

    /// `s · theta` for `theta` ending at `s.dim()`.
    pub fn act(&self, s: &Simplex<O>, theta: &O) -> Simplex<O> {
        self.resolve(s.cell, s.op.after(theta))
    }

    pub fn face(&self, s: &Simplex<O>, slot: usize) -> Simplex<O> {
        self.act(s, &O::face(s.dim(), slot))
    }

    /// All `n`-simplices, degenerate ones included, ordered by (cell dimension, cell index, operator).
    pub fn simplices(&self, n: usize) -> Vec<Simplex<O>> {
        let mut out = Vec::new();
        for k in 0..=n.min(self.cells.len().saturating_sub(1)) {
            let degs = O::degeneracies(n, k);
            for cell in self.cell_ids(k) {
                for d in &degs {
                    out.push(Simplex {
                        cell,
                        op: d.clone(),
                    });
                }
            }
        }
        out
    }

    /// Label of a simplex: `id` when nondegenerate, `word~id` otherwise.
    pub fn label(&self, s: &Simplex<O>) -> String {
        if s.is_nondegenerate() {
            self.id(s.cell).to_string()
        } else {
            format!("{}~{}", s.op.word(), self.id(s.cell))
        }
    }

    /// Reference syntax of the text format: `word.id` or `id`.
    pub fn reference(&self, s: &Simplex<O>) -> String {
        if s.is_nondegenerate() {
            self.id(s.cell).to_string()
        } else {
            format!("{}.{}", s.op.word(), self.id(s.cell))
        }
    }

    pub fn parse_reference(&self, text: &str) -> Result<Simplex<O>> {
        let (word, id) = match text.split_once('.') {
            Some((w, id)) => (w, id),
            None => ("", text),
        };
        let cell = self
            .find(id)
            .ok_or_else(|| Error::malformed(format!("reference to unknown cell {id}")))?;
        let op = O::parse_word(word, cell.dim)
            .ok_or_else(|| Error::malformed(format!("bad degeneracy word {word:?} in {text}")))?;
        Ok(Simplex { cell, op })
    }

    /// Checks the face identities on every cell after normal-form reduction.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for n in 2..self.cells.len() {
            for x in self.cell_ids(n) {
                let top = Simplex::nondegenerate(x);
                for t in 0..O::face_count(n) {
                    let outer = self.face(&top, t);
                    for s in 0..O::face_count(n - 1) {
                        let via_face = self.face(&outer, s);
                        let direct = self.resolve(x, O::face(n, t).after(&O::face(n - 1, s)));
                        if via_face != direct {
                            report.push(
                                "face identity",
                                vec![
                                    self.id(x).to_string(),
                                    format!("slots {} then {}", O::slot_label(n, t), O::slot_label(n - 1, s)),
                                ],
                            );
                        }
                    }
                }
            }
        }
        report
    }

    /// The smallest subcomplex containing `generators`, keeping ids, plus its inclusion.
    pub fn subcomplex(&self, generators: &[CellId]) -> (Complex<O>, ComplexMap<O>) {
        let mut keep: BTreeSet<CellId> = BTreeSet::new();
        let mut stack: Vec<CellId> = generators.to_vec();
        while let Some(c) = stack.pop() {
            if keep.insert(c) {
                for f in &self.cell(c).faces {
                    stack.push(f.cell);
                }
            }
        }
        self.restrict_to(&keep)
    }

    /// Subcomplex on a face-closed set of cells.
    pub fn restrict_to(&self, keep: &BTreeSet<CellId>) -> (Complex<O>, ComplexMap<O>) {
        let mut sub = Complex::new();
        let mut renumber: HashMap<CellId, CellId> = HashMap::new();
        let mut images = Vec::new();
        for n in 0..self.cells.len() {
            let mut row = Vec::new();
            for c in self.cell_ids(n) {
                if !keep.contains(&c) {
                    continue;
                }
                let faces = self
                    .cell(c)
                    .faces
                    .iter()
                    .map(|f| Simplex {
                        cell: renumber[&f.cell],
                        op: f.op.clone(),
                    })
                    .collect();
                let nc = sub.add_cell(n, self.id(c), faces).expect("subcomplex of a valid complex");
                renumber.insert(c, nc);
                row.push(Simplex::nondegenerate(c));
            }
            images.push(row);
        }
        (sub, ComplexMap::new(images))
    }

    /// Disjoint union; cell ids are prefixed with `prefix/`.
    pub fn coproduct(parts: &[(&Complex<O>, &str)]) -> Result<(Complex<O>, Vec<ComplexMap<O>>)> {
        let mut out = Complex::new();
        let mut legs = Vec::new();
        let top = parts.iter().filter_map(|(c, _)| c.dim()).max().map_or(0, |d| d + 1);
        let mut renumber: Vec<HashMap<CellId, CellId>> = vec![HashMap::new(); parts.len()];
        let mut images: Vec<Vec<Vec<Simplex<O>>>> = vec![Vec::new(); parts.len()];
        for n in 0..top {
            for (p, (c, prefix)) in parts.iter().enumerate() {
                let mut row = Vec::new();
                for x in c.cell_ids(n) {
                    let faces = c
                        .cell(x)
                        .faces
                        .iter()
                        .map(|f| Simplex {
                            cell: renumber[p][&f.cell],
                            op: f.op.clone(),
                        })
                        .collect();
                    let nc = out.add_cell(n, format!("{prefix}/{}", c.id(x)), faces)?;
                    renumber[p].insert(x, nc);
                    row.push(Simplex::nondegenerate(nc));
                }
                images[p].push(row);
            }
        }
        for imgs in images {
            legs.push(ComplexMap::new(imgs));
        }
        Ok((out, legs))
    }

    /// Map `self -> other` sending each cell to the cell with the same id.
    pub fn inclusion_into(&self, other: &Complex<O>) -> Result<ComplexMap<O>> {
        let mut images = Vec::new();
        for n in 0..self.cells.len() {
            let mut row = Vec::new();
            for c in self.cell_ids(n) {
                let target = other
                    .find(self.id(c))
                    .filter(|t| t.dim == n)
                    .ok_or_else(|| Error::invalid(format!("cell {} missing from the ambient complex", self.id(c))))?;
                row.push(Simplex::nondegenerate(target));
            }
            images.push(row);
        }
        let map = ComplexMap::new(images);
        map.validate(self, other).into_result("inclusion")?;
        Ok(map)
    }

    /// Relabels every cell; used to give constructed complexes readable ids.
    pub fn renamed(&self, mut name: impl FnMut(CellId, &str) -> String) -> Result<Complex<O>> {
        let mut out = Complex::new();
        for n in 0..self.cells.len() {
            for c in self.cell_ids(n) {
                out.add_cell(n, name(c, self.id(c)), self.cell(c).faces.clone())?;
            }
        }
        Ok(out)
    }
}
