use std::collections::{BTreeSet, HashMap};

use super::{Monotone, SimplicialSet};
use crate::complex::Simplex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    Simplex,
    Boundary,
    /// Λⁿ_k
    Horn(usize),
}

/// Canonical id of a vertex subset: `012`, or `3_10_11` once labels exceed 9.
pub fn subset_id(vertices: &[usize]) -> String {
    if vertices.iter().all(|&v| v < 10) {
        vertices.iter().map(|v| v.to_string()).collect()
    } else {
        vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
    }
}

/// The ordered simplicial complex generated by `facets` (vertex lists, sorted internally).
pub fn from_facets(facets: &[Vec<usize>]) -> Result<SimplicialSet> {
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        if f.is_empty() {
            return Err(Error::invalid("empty facet"));
        }
        let k = f.len();
        for mask in 1u64..(1u64 << k) {
            all.insert((0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    from_subsets(&all)
}

/// Builds the complex on a face-closed family of vertex subsets.
pub fn from_subsets(subsets: &BTreeSet<Vec<usize>>) -> Result<SimplicialSet> {
    let mut by_dim: Vec<Vec<&Vec<usize>>> = Vec::new();
    for s in subsets {
        let d = s.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize_with(d + 1, Vec::new);
        }
        by_dim[d].push(s);
    }
    let mut x = SimplicialSet::new();
    let mut ids: HashMap<&Vec<usize>, crate::complex::CellId> = HashMap::new();
    for (d, row) in by_dim.iter().enumerate() {
        for s in row {
            let mut faces = Vec::new();
            if d > 0 {
                for i in 0..=d {
                    let mut f = (*s).clone();
                    f.remove(i);
                    let c = ids
                        .get(&f)
                        .ok_or_else(|| Error::invalid(format!("subset family not face-closed at {s:?}")))?;
                    faces.push(Simplex::<Monotone>::nondegenerate(*c));
                }
            }
            let c = x.add_cell(d, subset_id(s), faces)?;
            ids.insert(s, c);
        }
    }
    Ok(x)
}

/// Δⁿ, ∂Δⁿ or Λⁿ_k with vertex-subset ids.
pub fn generators(n: usize, kind: Generator) -> Result<SimplicialSet> {
    let full: Vec<usize> = (0..=n).collect();
    let mut keep: BTreeSet<Vec<usize>> = BTreeSet::new();
    if let Generator::Horn(k) = kind {
        if n == 0 || k > n {
            return Err(Error::invalid(format!("horn Λ^{n}_{k} needs n >= 1 and 0 <= k <= n")));
        }
    }
    for mask in 1u64..(1u64 << (n + 1)) {
        let s: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
        let include = match kind {
            Generator::Simplex => true,
            Generator::Boundary => s != full,
            Generator::Horn(k) => s != full && !(s.len() == n && !s.contains(&k)),
        };
        if include {
            keep.insert(s);
        }
    }
    if keep.is_empty() {
        return Ok(SimplicialSet::new());
    }
    from_subsets(&keep)
}

pub fn simplex(n: usize) -> SimplicialSet {
    generators(n, Generator::Simplex).expect("valid")
}

pub fn boundary(n: usize) -> SimplicialSet {
    generators(n, Generator::Boundary).expect("valid")
}

pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
    generators(n, Generator::Horn(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point() {
        assert_eq!(simplex(0).counts(), vec![1]);
    }

    #[test]
    fn triangle_boundary() {
        assert_eq!(boundary(2).counts(), vec![3, 3]);
    }

    #[test]
    fn inner_horn() {
        let h = horn(2, 1).unwrap();
        assert_eq!(h.counts(), vec![3, 2]);
        assert!(h.find("02").is_none());
    }

    #[test]
    fn invalid_horn() {
        assert!(horn(0, 0).is_err());
        assert!(horn(2, 3).is_err());
    }

    #[test]
    fn generators_are_valid_subcomplexes() {
        for n in 0..5 {
            let full = simplex(n);
            assert!(full.validate().is_empty());
            let b = boundary(n);
            assert!(b.validate().is_empty());
            b.inclusion_into(&full).unwrap();
            for k in 0..=n {
                if n > 0 {
                    horn(n, k).unwrap().inclusion_into(&full).unwrap();
                }
            }
        }
    }
}
