mod common;

use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shapecalc::invariants::{
    chain_complex, contractibility_probe, homology, pi1_presentation, smith_normal_form, IntMatrix, DEFAULT_TIETZE_BUDGET,
};
use shapecalc::simplicial::SimplicialSet;

fn small(seed: u64, dim: usize, cells: usize) -> SimplicialSet {
    random_simplicial_set(&mut ChaCha8Rng::seed_from_u64(seed), dim, cells)
}

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn boundary_squares_to_zero(s in any::<u64>()) {
        let x = small(s, 4, 12);
        prop_assert!(chain_complex(&x, 4).unwrap().squares_to_zero());
    }

    #[test]
    fn homology_matches_the_field_oracle(s in any::<u64>()) {
        let x = small(s, 3, 10);
        let h = homology(&x, 2).unwrap();
        prop_assert_eq!(h.betti(), betti_oracle(&x, 2));
        let top = homology(&x, 3).unwrap();
        prop_assert_eq!(top.euler_characteristic(), x.euler_characteristic());
    }

    #[test]
    fn abelianized_pi1_is_first_homology(s in any::<u64>()) {
        let x = small(s, 2, 8);
        let h = homology(&x, 1).unwrap();
        let base = x.id(x.cell_ids(0).next().unwrap()).to_string();
        let p = pi1_presentation(&x, &base, DEFAULT_TIETZE_BUDGET).unwrap();
        prop_assert!(p.is_valid());
        if h.groups[0].rank == 1 {
            prop_assert_eq!(p.abelianization(), h.groups[1].clone());
        }
    }

    #[test]
    fn probe_never_passes_with_nonvanishing_homology(s in any::<u64>()) {
        let x = small(s, 2, 8);
        let r = contractibility_probe(&x, 1).unwrap();
        let b = betti_oracle(&x, 1);
        if r.verdict.passes() {
            prop_assert_eq!(b, vec![1, 0]);
        }
    }

    #[test]
    fn smith_form_is_certified(m in matrix(6)) {
        let s = smith_normal_form(&IntMatrix::from_rows(&m));
        prop_assert_eq!(certify_smith(&m, &s), Ok(()));
        let cols = m.first().map_or(0, Vec::len);
        let mut running = num_bigint::BigInt::from(1);
        for k in 1..=m.len().min(cols).min(4) {
            let dk = determinantal_divisor(&m, k);
            if k <= s.factors.len() {
                running *= &s.factors[k - 1];
                prop_assert_eq!(&dk, &running);
            } else {
                prop_assert!(dk.is_zero());
            }
        }
    }
}

#[test]
fn projective_plane_has_two_torsion() {
    let h = homology(&rp2(), 2).unwrap();
    assert_eq!(h.betti(), vec![1, 0, 0]);
    assert_eq!(h.torsion(1), vec![2]);
    let p = pi1_presentation(&rp2(), "0", DEFAULT_TIETZE_BUDGET).unwrap();
    assert_eq!(p.abelianization().torsion_u64(), vec![2]);
}
