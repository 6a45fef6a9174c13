mod common;

use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shapecalc::complex::{colimit, Complex, ComplexMap, Operator};
use shapecalc::cubical::{all_cases, cube, cube_boundary, cube_horn, verify_pushout_product, PushoutCase};
use shapecalc::error::Budget;
use shapecalc::homotopical::{boxslash, factor_bounded, find_lift, replay, GeneratingMap, LiftingProblem};
use shapecalc::simplicial::generators::generators;
use shapecalc::simplicial::{Generator, SimplicialSet};

fn budget() -> Budget {
    Budget::new("test", 50_000_000)
}

type Arrow<O> = (Complex<O>, Complex<O>, ComplexMap<O>);

fn inclusion<O: Operator>(a: Complex<O>, b: Complex<O>) -> Arrow<O> {
    let i = a.inclusion_into(&b).unwrap();
    (a, b, i)
}

fn simplicial_generators() -> Vec<Arrow<shapecalc::simplicial::Monotone>> {
    let full = |n| generators(n, Generator::Simplex).unwrap();
    vec![
        inclusion(SimplicialSet::new(), full(0)),
        inclusion(generators(1, Generator::Boundary).unwrap(), full(1)),
        inclusion(generators(1, Generator::Horn(0)).unwrap(), full(1)),
        inclusion(generators(2, Generator::Horn(1)).unwrap(), full(2)),
        inclusion(generators(2, Generator::Horn(2)).unwrap(), full(2)),
        inclusion(generators(2, Generator::Boundary).unwrap(), full(2)),
    ]
}

/// A random map between two small random simplicial sets.
fn random_map(rng: &mut ChaCha8Rng) -> Option<Arrow<shapecalc::simplicial::Monotone>> {
    let x = random_simplicial_set(rng, 2, 4);
    let y = random_simplicial_set(rng, 2, 4);
    let p = naive_maps(&x, &y).choose(rng)?.clone();
    Some((x, y, p))
}

fn as_ref<O>(a: &Arrow<O>) -> (&Complex<O>, &Complex<O>, &ComplexMap<O>) {
    (&a.0, &a.1, &a.2)
}

/// The matching subcomplex of `□^N` by cell counts: faces of dimension `k` number `C(N,k) 2^(N-k)`.
fn expected_counts(total: usize, case: &PushoutCase) -> Vec<usize> {
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    let mut counts: Vec<usize> = (0..total).map(|k| binom(total, k) << (total - k)).collect();
    if !matches!(case, PushoutCase::Boundary) {
        counts[total - 1] -= 1;
    }
    counts
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn boxslash_agrees_with_brute_force(s in any::<u64>(), k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let Some(right) = random_map(&mut rng) else { return Ok(()) };
        let left = &simplicial_generators()[k];
        let verdict = boxslash(as_ref(left), as_ref(&right), &budget()).unwrap();
        let (holds, squares) = naive_boxslash(as_ref(left), as_ref(&right));
        prop_assert_eq!((verdict.holds, verdict.squares), (holds, squares));
        if let Some(w) = verdict.witness {
            let problem = LiftingProblem::new(as_ref(left), as_ref(&right), &w.f, &w.g).unwrap();
            prop_assert!(find_lift(&problem, &budget()).unwrap().is_none());
        }
    }

    #[test]
    fn lifting_is_stable_under_pushout(s in any::<u64>(), k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let Some(right) = random_map(&mut rng) else { return Ok(()) };
        let (a, b, i) = &simplicial_generators()[k];
        prop_assume!(boxslash((a, b, i), as_ref(&right), &budget()).unwrap().holds);
        let c = random_simplicial_set(&mut rng, 2, 4);
        let Some(h) = naive_maps(a, &c).choose(&mut rng).cloned() else { return Ok(()) };
        let p = colimit(&[("a".into(), a), ("b".into(), b), ("c".into(), &c)], &[(0, 1, i), (0, 2, &h)], &budget()).unwrap();
        let pushed = &p.legs[2];
        prop_assert!(pushed.validate(&c, &p.complex).is_empty());
        prop_assert!(naive_boxslash((&c, &p.complex, pushed), as_ref(&right)).0);
    }

    #[test]
    fn bounded_factorization_is_sound(s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let Some((x, y, f)) = random_map(&mut rng) else { return Ok(()) };
        let gens: Vec<GeneratingMap<_>> = simplicial_generators()[..2]
            .iter()
            .enumerate()
            .map(|(n, (a, b, _))| GeneratingMap::inclusion(format!("g{n}"), a.clone(), b.clone()).unwrap())
            .collect();
        let rounds = rng.gen_range(1..=2);
        let r = factor_bounded(&f, &x, &y, &gens, rounds, &budget()).unwrap();
        prop_assert!(r.left.validate(&x, &r.middle).is_empty());
        prop_assert!(r.right.validate(&r.middle, &y).is_empty());
        prop_assert!(r.left.is_mono());
        prop_assert_eq!(compose(&r.left, &r.right, &r.middle, &y), f.images().iter().flatten().cloned().collect::<Vec<_>>());
        prop_assert_eq!(replay(&x, &gens, &r.history, &budget()).unwrap(), r.middle.clone());
        let mut all_lift = true;
        for g in &gens {
            all_lift &= naive_boxslash((&g.a, &g.b, &g.i), (&r.middle, &y, &r.right)).0;
        }
        prop_assert_eq!(r.is_complete(), all_lift);
    }
}

#[test]
fn cubical_horns_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let targets = [cube(0), cube(1), cube_boundary(2), cube_horn(2, 1, false).unwrap()];
    for n in 1..=2 {
        for i in 1..=n {
            for xi in [false, true] {
                let left = inclusion(cube_horn(n, i, xi).unwrap(), cube(n));
                for x in &targets {
                    for y in &targets {
                        let Some(p) = naive_maps(x, y).choose(&mut rng).cloned() else { continue };
                        let right = (x.clone(), y.clone(), p);
                        let v = boxslash(as_ref(&left), as_ref(&right), &budget()).unwrap();
                        assert_eq!((v.holds, v.squares), naive_boxslash(as_ref(&left), as_ref(&right)));
                    }
                }
            }
        }
    }
}

#[test]
fn pushout_products_are_boundaries_and_horns() {
    for (m, n, case) in all_cases(3) {
        let v = verify_pushout_product(m, n, case.clone(), &budget()).unwrap();
        assert!(v.holds, "{m} {n} {case:?}");
        if m + n > 0 {
            assert_eq!(v.pushout_counts, expected_counts(m + n, &case), "{m} {n} {case:?}");
        }
        assert!(v.comparison.is_mono());
    }
}
