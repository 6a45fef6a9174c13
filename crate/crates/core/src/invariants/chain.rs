use std::collections::BTreeMap;

use super::snf::SparseMatrix;
use crate::complex::{Complex, Operator, Simplex};
use crate::error::{Error, Result};

/// Normalized chains: free on nondegenerate cells, degenerate faces contribute zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[n] : C_n -> C_{n-1}` (empty for n = 0)
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `∂_n`, or the zero map when `n` is out of range.
    pub fn boundary(&self, n: usize) -> SparseMatrix {
        match self.boundaries.get(n) {
            Some(m) if n > 0 => m.clone(),
            _ => SparseMatrix::new(if n == 0 { 0 } else { self.rank(n - 1) }, vec![Vec::new(); self.rank(n)]),
        }
    }

    pub fn squares_to_zero(&self) -> bool {
        (2..self.boundaries.len()).all(|n| self.boundaries[n - 1].compose_is_zero(&self.boundaries[n]))
    }
}

fn column<O: Operator>(x: &Complex<O>, s: &Simplex<O>) -> Vec<(usize, i64)> {
    let n = s.dim();
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for slot in 0..O::face_count(n) {
        let f = x.face(s, slot);
        if f.is_nondegenerate() {
            *acc.entry(f.cell.index).or_default() += O::face_sign(n, slot);
        }
    }
    acc.into_iter().filter(|(_, v)| *v != 0).collect()
}

/// Chains in degrees `0..=dmax`.
pub fn chain_complex<O: Operator>(x: &Complex<O>, dmax: usize) -> Result<ChainComplex> {
    let ranks: Vec<usize> = (0..=dmax).map(|n| x.cells(n).len()).collect();
    let mut boundaries = vec![SparseMatrix::new(0, vec![Vec::new(); ranks[0]])];
    for n in 1..=dmax {
        let cols = x.cell_ids(n).map(|c| column(x, &Simplex::nondegenerate(c))).collect();
        boundaries.push(SparseMatrix::new(ranks[n - 1], cols));
    }
    let cc = ChainComplex { ranks, boundaries };
    if !cc.squares_to_zero() {
        return Err(Error::invalid("boundary does not square to zero"));
    }
    Ok(cc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubical::cube;
    use crate::invariants::snf::rank;
    use crate::simplicial::{boundary, simplex};

    #[test]
    fn point() {
        let c = chain_complex(&simplex(0), 0).unwrap();
        assert_eq!(c.ranks, vec![1]);
    }

    #[test]
    fn triangle_boundary() {
        let c = chain_complex(&boundary(2), 1).unwrap();
        assert_eq!(c.ranks, vec![3, 3]);
        assert_eq!(rank(&c.boundaries[1]), 2);
    }

    #[test]
    fn interval_cube() {
        let c = chain_complex(&cube(1), 1).unwrap();
        assert_eq!(c.ranks, vec![2, 1]);
        // vertex "0" has index 0, "1" index 1; ∂ = -(face(1,1) - face(1,0)) = (1, -1)
        assert_eq!(c.boundaries[1].columns[0], vec![(0, 1), (1, -1)]);
    }
}
