mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shapecalc::complex::enumerate_maps;
use shapecalc::error::Budget;
use shapecalc::simplicial::{product, simplex, Ex, SimplicialSet, Subdivision};

fn budget() -> Budget {
    Budget::new("test", 20_000_000)
}

fn small(seed: u64, dim: usize, cells: usize) -> SimplicialSet {
    random_simplicial_set(&mut ChaCha8Rng::seed_from_u64(seed), dim, cells)
}

/// Every face of every simplex up to `n`, including degenerate ones, satisfies
/// `d_i d_j = d_{j-1} d_i` for `i < j`.
fn identities_hold(x: &SimplicialSet, n: usize) -> bool {
    (2..=n).all(|k| {
        x.simplices(k).iter().all(|s| {
            (0..=k).all(|j| (0..j).all(|i| x.face(&x.face(s, j), i) == x.face(&x.face(s, i), j - 1)))
        })
    })
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn generated_sets_satisfy_the_identities(s in any::<u64>()) {
        let x = small(s, 3, 9);
        prop_assert!(x.validate().is_empty());
        prop_assert!(identities_hold(&x, 3));
    }

    #[test]
    fn product_is_valid_with_matching_euler_characteristic(a in any::<u64>(), b in any::<u64>()) {
        let x = small(a, 2, 5);
        let y = small(b, 1, 4);
        let p = product(&x, &y, 3, &budget()).unwrap();
        prop_assert!(p.complex.validate().is_empty());
        prop_assert!(identities_hold(&p.complex, 3));
        prop_assert!(p.first.validate(&p.complex, &x).is_empty());
        prop_assert!(p.second.validate(&p.complex, &y).is_empty());
        prop_assert_eq!(p.complex.euler_characteristic(), x.euler_characteristic() * y.euler_characteristic());
    }

    #[test]
    fn product_with_a_point_is_an_isomorphism(s in any::<u64>()) {
        let x = small(s, 3, 8);
        let p = product(&x, &simplex(0), 3, &budget()).unwrap();
        prop_assert_eq!(p.complex.counts(), x.counts());
        prop_assert!(p.first.is_mono());
    }

    #[test]
    fn subdivision_preserves_homology(s in any::<u64>()) {
        let x = small(s, 2, 7);
        let sub = Subdivision::new(&x).unwrap();
        let y = sub.complex();
        prop_assert!(y.validate().is_empty());
        prop_assert!(identities_hold(y, 3));
        prop_assert_eq!(y.euler_characteristic(), x.euler_characteristic());
        prop_assert_eq!(betti_oracle(y, 2), betti_oracle(&x, 2));
        let last = sub.last_vertex();
        prop_assert!(last.validate(y, &x).is_empty());
        for n in 0..=2 {
            prop_assert_eq!(induced_rank(&last, y, &x, n), betti_oracle(&x, 2)[n]);
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn ex_comparison_is_a_homology_isomorphism(s in any::<u64>()) {
        let x = small(s, 2, 5);
        let b = budget();
        let e = Ex::new(&x, 2, &b).unwrap();
        let y = e.complex();
        prop_assert!(y.validate().is_empty());
        prop_assert!(identities_hold(y, 2));
        let c = e.comparison().unwrap();
        prop_assert!(c.validate(&x, y).is_empty());
        let betti = betti_oracle(&x, 1);
        prop_assert_eq!(&betti_oracle(y, 1), &betti);
        for n in 0..=1 {
            prop_assert_eq!(induced_rank(&c, &x, y, n), betti[n]);
        }
    }

    #[test]
    fn map_search_agrees_with_brute_force(a in any::<u64>(), b in any::<u64>()) {
        let x = small(a, 2, 4);
        let y = small(b, 2, 5);
        let found = enumerate_maps(&x, &y, &budget()).unwrap();
        for f in &found {
            prop_assert!(f.validate(&x, &y).is_empty());
        }
        let mut lib: Vec<String> = found.iter().map(|f| f.describe(&x, &y).join(" ")).collect();
        let mut naive: Vec<String> = naive_maps(&x, &y).iter().map(|f| f.describe(&x, &y).join(" ")).collect();
        lib.sort();
        naive.sort();
        prop_assert_eq!(lib, naive);
    }
}

