mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shapecalc::catcore::{catalog, elements, elements_map, restrict, FunctorData, SetPresheaf};
use shapecalc::error::Budget;
use shapecalc::invariants::{contractibility_probe, homology};
use shapecalc::shape::shape_invariants;
use shapecalc::simplicial::Monotone;

fn budget() -> Budget {
    Budget::new("test", 50_000_000)
}

proptest! {
    #![proptest_config(config(32))]

    #[test]
    fn representables_have_contractible_shape(s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let cats = small_categories(&mut rng, 2);
        let c = cats[rng.gen_range(0..cats.len())].clone();
        for a in 0..c.object_count() {
            let r = shape_invariants(&SetPresheaf::representable(c.clone(), a), 2, &budget()).unwrap();
            prop_assert!(r.contractibility.verdict.passes(), "{} at {}", r.contractibility.verdict, c.objects()[a]);
            prop_assert!(r.is_consistent());
        }
    }

    #[test]
    fn shape_of_a_simplicial_set_is_its_homotopy_type(s in any::<u64>()) {
        let x = random_simplicial_set(&mut ChaCha8Rng::seed_from_u64(s), 2, 6);
        let n = x.dim().unwrap_or(0);
        let base = Arc::new(catalog::truncated::<Monotone>(n));
        let p = catalog::complex_as_presheaf(&x, base, n).unwrap();
        let r = shape_invariants(&p, 2, &budget()).unwrap();
        prop_assert_eq!(r.homology.betti(), betti_oracle(&x, 2));
        prop_assert_eq!(&r.homology.groups, &homology(&x, 2).unwrap().groups);
        prop_assert!(r.is_consistent());
    }

    #[test]
    fn restriction_is_functorial(s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let cats = small_categories(&mut rng, 2);
        let c = cats[rng.gen_range(0..cats.len())].clone();
        let x = random_presheaf(&mut rng, &c);
        let y = random_presheaf(&mut rng, &c);
        let keep: Vec<Vec<bool>> = (0..c.object_count()).map(|a| (0..y.size(a)).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let z = y.subpresheaf(&down_closure(&y, keep)).unwrap();
        let (ey, ez) = (elements(&y).unwrap(), elements(&z).unwrap());
        let u = ey.projection(c.clone());
        let v = elements_map(&inclusion(&z, &y), &ez, &ey, &c);
        let once = restrict(&v.then(&u), &x).unwrap();
        let twice = restrict(&v, &restrict(&u, &x).unwrap()).unwrap();
        prop_assert!(once.validate().is_empty());
        prop_assert_eq!(once, twice);
        prop_assert_eq!(restrict(&FunctorData::identity(c.clone()), &x).unwrap(), x);
    }

    #[test]
    fn passing_the_probe_is_monotone_in_the_bound(s in any::<u64>()) {
        let x = random_simplicial_set(&mut ChaCha8Rng::seed_from_u64(s), 3, 9);
        let verdicts: Vec<bool> = (0..=3).map(|d| contractibility_probe(&x, d).unwrap().verdict.passes()).collect();
        for d in 1..verdicts.len() {
            prop_assert!(!verdicts[d] || verdicts[d - 1]);
        }
    }
}
