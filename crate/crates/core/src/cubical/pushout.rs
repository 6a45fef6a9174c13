//! Pushout-products of boundary and horn inclusions of cubes.

use std::collections::BTreeSet;

use super::generators::{cube, cube_boundary, cube_horn};
use super::tensor::{tensor, tensor_map, Tensor};
use super::{CubeMorphism, CubicalSet};
use crate::complex::{colimit, ComplexMap, Simplex};
use crate::error::{Budget, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PushoutCase {
    /// ∂□ᵐ ↪ □ᵐ against ∂□ⁿ ↪ □ⁿ
    Boundary,
    /// ⊓ᵐ_{i,ξ} ↪ □ᵐ against ∂□ⁿ ↪ □ⁿ
    HornLeft(usize, bool),
    /// ∂□ᵐ ↪ □ᵐ against ⊓ⁿ_{i,ξ} ↪ □ⁿ
    HornRight(usize, bool),
}

#[derive(Clone, Debug)]
pub struct PushoutVerdict {
    pub holds: bool,
    /// The subcomplex of □^{m+n} the pushout should be, e.g. `boundary` or `horn 3 0`.
    pub expected: String,
    pub pushout_counts: Vec<usize>,
    pub expected_counts: Vec<usize>,
    /// The comparison map from the pushout into □^{m+n}.
    pub comparison: ComplexMap<CubeMorphism>,
    /// The isomorphism onto the expected subcomplex, when it is one.
    pub witness: Option<ComplexMap<CubeMorphism>>,
    pub pushout: CubicalSet,
}

/// `□ᵐ ⊗ □ⁿ ≅ □^{m+n}`, concatenating face words.
fn concatenation(t: &Tensor, left: &CubicalSet, right: &CubicalSet, target: &CubicalSet) -> Result<ComplexMap<CubeMorphism>> {
    let word = |s: &str| if s == "pt" { String::new() } else { s.to_string() };
    let rows = t
        .factors
        .iter()
        .map(|row| {
            row.iter()
                .map(|(a, b)| {
                    let w = word(left.id(*a)) + &word(right.id(*b));
                    let w = if w.is_empty() { "pt".to_string() } else { w };
                    target
                        .find(&w)
                        .map(Simplex::nondegenerate)
                        .ok_or_else(|| Error::invalid(format!("no cell {w} in the cube")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexMap::new(rows))
}

/// Builds the pushout of `A' ⊗ B <- A' ⊗ B' -> A ⊗ B'`, maps it into `□^{m+n}`, and checks
/// degreewise that the map is a bijection onto the boundary (or the matching horn).
pub fn verify_pushout_product(m: usize, n: usize, case: PushoutCase, budget: &Budget) -> Result<PushoutVerdict> {
    let (a_sub, b_sub, expected_sub, expected) = match case {
        PushoutCase::Boundary => (cube_boundary(m), cube_boundary(n), cube_boundary(m + n), "boundary".to_string()),
        PushoutCase::HornLeft(i, xi) => {
            if m == 0 {
                return Err(Error::invalid("horn-left needs m >= 1"));
            }
            (
                cube_horn(m, i, xi)?,
                cube_boundary(n),
                cube_horn(m + n, i, xi)?,
                format!("horn {i} {}", xi as u8),
            )
        }
        PushoutCase::HornRight(i, xi) => {
            if n == 0 {
                return Err(Error::invalid("horn-right needs n >= 1"));
            }
            (
                cube_boundary(m),
                cube_horn(n, i, xi)?,
                cube_horn(m + n, i + m, xi)?,
                format!("horn {} {}", i + m, xi as u8),
            )
        }
    };
    let (a, b) = (cube(m), cube(n));
    let d = m + n;
    let ia = a_sub.inclusion_into(&a)?;
    let ib = b_sub.inclusion_into(&b)?;
    let id_a_sub = ComplexMap::identity(&a_sub);
    let id_b_sub = ComplexMap::identity(&b_sub);
    let corner = tensor(&a_sub, &b_sub, d, budget)?;
    let left = tensor(&a_sub, &b, d, budget)?;
    let right = tensor(&a, &b_sub, d, budget)?;
    let whole = tensor(&a, &b, d, budget)?;
    let to_left = tensor_map(&id_a_sub, &ib, &corner, &left);
    let to_right = tensor_map(&ia, &id_b_sub, &corner, &right);
    let p = colimit(
        &[
            ("c".into(), &corner.complex),
            ("l".into(), &left.complex),
            ("r".into(), &right.complex),
        ],
        &[(0, 1, &to_left), (0, 2, &to_right)],
        budget,
    )?;
    let target = cube(d);
    let iso = concatenation(&whole, &a, &b, &target)?;
    let left_in = tensor_map(&ia, &ComplexMap::identity(&b), &left, &whole).then(&iso);
    let right_in = tensor_map(&ComplexMap::identity(&a), &ib, &right, &whole).then(&iso);
    let corner_in = to_left.then(&left_in);
    let comparison = p.induced(
        &[&corner.complex, &left.complex, &right.complex],
        &[&corner_in, &left_in, &right_in],
        &target,
    )?;
    let pushout_counts = p.complex.counts();
    let expected_counts = expected_sub.counts();
    // degreewise bijection onto the expected cells
    let mut images = BTreeSet::new();
    let mut injective = comparison.is_mono();
    for c in p.complex.all_cell_ids() {
        let s = comparison.image(c);
        injective &= s.is_nondegenerate() && images.insert(target.id(s.cell).to_string());
    }
    let wanted: BTreeSet<String> = expected_sub.all_cell_ids().map(|c| expected_sub.id(c).to_string()).collect();
    let holds = injective && images == wanted;
    let witness = if holds {
        let rows = comparison
            .images()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| Simplex::nondegenerate(expected_sub.find(target.id(s.cell)).expect("image is expected")))
                    .collect()
            })
            .collect();
        let w = ComplexMap::new(rows);
        w.validate(&p.complex, &expected_sub).into_result("pushout witness")?;
        Some(w)
    } else {
        None
    };
    Ok(PushoutVerdict {
        holds,
        expected,
        pushout_counts,
        expected_counts,
        comparison,
        witness,
        pushout: p.complex,
    })
}

/// Every case with `m + n <= total`: boundary for all m, n; horns for m >= 1 (left) and n >= 1 (right).
pub fn all_cases(total: usize) -> Vec<(usize, usize, PushoutCase)> {
    let mut out = Vec::new();
    for m in 0..=total {
        for n in 0..=total - m {
            out.push((m, n, PushoutCase::Boundary));
            for xi in [false, true] {
                for i in 1..=m {
                    out.push((m, n, PushoutCase::HornLeft(i, xi)));
                }
                for i in 1..=n {
                    out.push((m, n, PushoutCase::HornRight(i, xi)));
                }
            }
        }
    }
    out
}
