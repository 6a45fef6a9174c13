//! The geometric (Day convolution) tensor product of cubical sets.

use std::collections::HashMap;

use super::{CubeMorphism, CubicalSet, Slot};
use crate::complex::{CellId, ComplexMap, Operator, Simplex};
use crate::error::{Budget, Result};

/// `θ ⊗ φ`, acting on the first coordinates by θ and the rest by φ.
pub fn tensor_ops(theta: &CubeMorphism, phi: &CubeMorphism) -> CubeMorphism {
    let shift = theta.source() as u8;
    let slots = theta
        .slots()
        .iter()
        .copied()
        .chain(phi.slots().iter().map(|s| match s {
            Slot::Var(i) => Slot::Var(i + shift),
            c => *c,
        }))
        .collect();
    CubeMorphism::new(theta.source() + phi.source(), slots).expect("concatenation stays in normal form")
}

/// `X ⊗ Y` with the factor cells of every cell.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub complex: CubicalSet,
    pub factors: Vec<Vec<(CellId, CellId)>>,
    lookup: HashMap<(CellId, CellId), CellId>,
}

impl Tensor {
    pub fn cell_of(&self, x: CellId, y: CellId) -> Option<CellId> {
        self.lookup.get(&(x, y)).copied()
    }

    /// Image of the pair `(s, t)` of simplices.
    pub fn pair(&self, s: &Simplex<CubeMorphism>, t: &Simplex<CubeMorphism>) -> Simplex<CubeMorphism> {
        Simplex {
            cell: self.lookup[&(s.cell, t.cell)],
            op: tensor_ops(&s.op, &t.op),
        }
    }
}

/// Nondegenerate cells of `X ⊗ Y` are pairs of nondegenerate cells, in dimension `dim x + dim y`.
pub fn tensor(x: &CubicalSet, y: &CubicalSet, dmax: usize, budget: &Budget) -> Result<Tensor> {
    let mut complex = CubicalSet::new();
    let mut factors = Vec::new();
    let mut lookup = HashMap::new();
    for n in 0..=dmax {
        let mut row = Vec::new();
        for p in 0..=n {
            for a in x.cell_ids(p) {
                for b in y.cell_ids(n - p) {
                    budget.spend(1)?;
                    let mut faces = Vec::with_capacity(2 * n);
                    let (sa, sb) = (Simplex::nondegenerate(a), Simplex::nondegenerate(b));
                    for slot in 0..CubeMorphism::face_count(p) {
                        let f = x.face(&sa, slot);
                        faces.push(Simplex {
                            cell: lookup[&(f.cell, b)],
                            op: tensor_ops(&f.op, &CubeMorphism::identity(n - p)),
                        });
                    }
                    for slot in 0..CubeMorphism::face_count(n - p) {
                        let f = y.face(&sb, slot);
                        faces.push(Simplex {
                            cell: lookup[&(a, f.cell)],
                            op: tensor_ops(&CubeMorphism::identity(p), &f.op),
                        });
                    }
                    let id = format!("{}*{}", x.id(a), y.id(b));
                    let c = complex.add_cell(n, id, faces)?;
                    lookup.insert((a, b), c);
                    row.push((a, b));
                }
            }
        }
        factors.push(row);
    }
    Ok(Tensor {
        complex,
        factors,
        lookup,
    })
}

/// `f ⊗ g : X ⊗ Y -> X' ⊗ Y'`.
pub fn tensor_map(f: &ComplexMap<CubeMorphism>, g: &ComplexMap<CubeMorphism>, source: &Tensor, target: &Tensor) -> ComplexMap<CubeMorphism> {
    ComplexMap::new(
        source
            .factors
            .iter()
            .map(|row| row.iter().map(|(a, b)| target.pair(f.image(*a), g.image(*b))).collect())
            .collect(),
    )
}
