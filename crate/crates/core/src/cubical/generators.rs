use super::{CubeMorphism, CubicalSet};
use crate::complex::Simplex;
use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeGenerator {
    Cube,
    Boundary,
    /// The horn missing the face `(i, ξ)` (1-based coordinate).
    Horn(usize, bool),
}

/// Faces of □ⁿ are words over `0`, `1`, `x`; the free coordinates are the `x`s.
fn faces_of(word: &str) -> Vec<String> {
    let free: Vec<usize> = word.char_indices().filter(|(_, c)| *c == 'x').map(|(i, _)| i).collect();
    let mut out = Vec::new();
    for &p in &free {
        for end in ['0', '1'] {
            let mut w: Vec<char> = word.chars().collect();
            w[p] = end;
            out.push(w.into_iter().collect());
        }
    }
    out
}

/// The subcomplex of □ⁿ spanned by the face words accepted by `keep` (which must be face-closed).
fn cube_subcomplex(n: usize, keep: impl Fn(&str) -> bool) -> Result<CubicalSet> {
    let mut words: Vec<String> = (0..3usize.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = ['0', '1', 'x'][k % 3];
                    k /= 3;
                    c
                })
                .collect::<String>()
        })
        .filter(|w| keep(w))
        .collect();
    words.sort_by_key(|w| (w.matches('x').count(), w.clone()));
    let mut x = CubicalSet::new();
    let mut ids = HashMap::new();
    for w in &words {
        let dim = w.matches('x').count();
        let faces = faces_of(w)
            .iter()
            .map(|f| {
                ids.get(f)
                    .map(|&c| Simplex::<CubeMorphism>::nondegenerate(c))
                    .ok_or_else(|| Error::invalid(format!("cube face family not closed at {w}")))
            })
            .collect::<Result<Vec<_>>>()?;
        // □⁰ has the empty word as its only cell
        let id = if w.is_empty() { "pt".to_string() } else { w.clone() };
        ids.insert(w.clone(), x.add_cell(dim, id, faces)?);
    }
    Ok(x)
}

/// □ⁿ, ∂□ⁿ or the horn ⊓ⁿ_{i,ξ}, with cells named by face words (`x` marks a free coordinate).
pub fn cube_generators(n: usize, kind: CubeGenerator) -> Result<CubicalSet> {
    let top: String = "x".repeat(n);
    match kind {
        CubeGenerator::Cube => cube_subcomplex(n, |_| true),
        CubeGenerator::Boundary => cube_subcomplex(n, |w| w != top),
        CubeGenerator::Horn(i, xi) => {
            if i == 0 || i > n {
                return Err(Error::invalid(format!("horn index ({i}, {}) out of range for □^{n}", xi as u8)));
            }
            let mut missing: Vec<char> = top.chars().collect();
            missing[i - 1] = if xi { '1' } else { '0' };
            let missing: String = missing.into_iter().collect();
            cube_subcomplex(n, |w| w != top && w != missing)
        }
    }
}

pub fn cube(n: usize) -> CubicalSet {
    cube_generators(n, CubeGenerator::Cube).expect("valid")
}

pub fn cube_boundary(n: usize) -> CubicalSet {
    cube_generators(n, CubeGenerator::Boundary).expect("valid")
}

pub fn cube_horn(n: usize, i: usize, xi: bool) -> Result<CubicalSet> {
    cube_generators(n, CubeGenerator::Horn(i, xi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(cube(0).counts(), vec![1]);
        assert_eq!(cube_boundary(1).counts(), vec![2]);
        assert_eq!(cube_horn(1, 1, false).unwrap().counts(), vec![1]);
        assert_eq!(cube_horn(1, 1, false).unwrap().cell_ids(0).map(|c| c).count(), 1);
        assert!(cube_horn(1, 1, false).unwrap().find("1").is_some());
        assert_eq!(cube_boundary(2).counts(), vec![4, 4]);
        assert_eq!(cube(3).counts(), vec![8, 12, 6, 1]);
        assert_eq!(cube_horn(3, 2, true).unwrap().counts(), vec![8, 12, 5]);
        assert!(cube_boundary(0).is_empty());
    }

    #[test]
    fn invalid_horn() {
        assert!(cube_horn(2, 3, false).is_err());
        assert!(cube_horn(0, 1, false).is_err());
    }

    #[test]
    fn valid_and_included() {
        for n in 0..=3 {
            let c = cube(n);
            assert!(c.validate().is_empty());
            let b = cube_boundary(n);
            assert!(b.inclusion_into(&c).is_ok());
            for i in 1..=n {
                for xi in [false, true] {
                    assert!(cube_horn(n, i, xi).unwrap().inclusion_into(&c).is_ok());
                }
            }
        }
    }

    #[test]
    fn square_faces() {
        let c = cube(2);
        let top = Simplex::<CubeMorphism>::nondegenerate(c.find("xx").unwrap());
        // face (1, 0) fixes the first coordinate at 0
        assert_eq!(c.id(c.face(&top, 0).cell), "0x");
        assert_eq!(c.id(c.face(&top, 3).cell), "x1");
    }
}
