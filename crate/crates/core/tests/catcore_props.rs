mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shapecalc::catcore::{elements, elements_map, nerve, subobject_classifier, FiniteCategory, FunctorData, PresheafMorphism, SetPresheaf};
use shapecalc::error::Budget;

fn category(seed: u64) -> Arc<FiniteCategory> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cats = small_categories(&mut rng, 3);
    cats[rng.gen_range(0..cats.len())].clone()
}

fn budget() -> Budget {
    Budget::new("test", 10_000_000)
}

/// Chains of `n` composable non-identity morphisms.
fn chains(c: &FiniteCategory, n: usize) -> usize {
    let proper: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
    let mut paths: Vec<usize> = (0..c.object_count()).map(|_| 1).collect();
    // paths[a] = number of chains of the current length ending at a
    for _ in 0..n {
        let mut next = vec![0; c.object_count()];
        for &f in &proper {
            next[c.target(f)] += paths[c.source(f)];
        }
        paths = next;
    }
    paths.iter().sum()
}

/// Sieves on `a` by brute force over subsets of morphisms into `a`.
fn brute_sieves(c: &FiniteCategory, a: usize) -> BTreeSet<Vec<String>> {
    let into = c.incoming(a);
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << into.len() {
        let s: Vec<usize> = (0..into.len()).filter(|&i| mask >> i & 1 == 1).map(|i| into[i]).collect();
        let closed = s.iter().all(|&h| c.incoming(c.source(h)).iter().all(|&g| s.contains(&c.compose(h, g))));
        if closed {
            let mut ids: Vec<String> = s.iter().map(|&f| c.morphisms()[f].id.clone()).collect();
            ids.sort();
            out.insert(ids);
        }
    }
    out
}

fn parse_sieve(id: &str) -> Vec<String> {
    let inner = &id[1..id.len() - 1];
    if inner.is_empty() {
        Vec::new()
    } else {
        inner.split(',').map(str::to_string).collect()
    }
}

/// `χ(x) = { g | X(g) x ∈ sub }`, looked up in `Ω`.
fn characteristic(x: &SetPresheaf, keep: &[Vec<bool>], omega: &SetPresheaf) -> PresheafMorphism {
    let c = &x.base;
    PresheafMorphism {
        components: (0..c.object_count())
            .map(|a| {
                (0..x.size(a))
                    .map(|e| {
                        let mut ids: Vec<&str> = c
                            .incoming(a)
                            .iter()
                            .filter(|&&g| keep[c.source(g)][x.act(g, e)])
                            .map(|&g| c.morphisms()[g].id.as_str())
                            .collect();
                        ids.sort_unstable();
                        omega.element(a, &format!("{{{}}}", ids.join(","))).unwrap()
                    })
                    .collect()
            })
            .collect(),
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn elements_form_a_category_over_the_base(s in any::<u64>()) {
        let c = category(s);
        let x = random_presheaf(&mut ChaCha8Rng::seed_from_u64(s ^ 1), &c);
        let el = elements(&x).unwrap();
        prop_assert!(el.category.validate().is_empty());
        prop_assert_eq!(el.category.object_count(), x.total_size());
        let arrows: usize = (0..c.morphism_count()).map(|f| x.size(c.target(f))).sum();
        prop_assert_eq!(el.category.morphism_count(), arrows);
        prop_assert!(el.projection(c.clone()).validate().is_empty());
    }

    #[test]
    fn elements_are_functorial_on_inclusions(s in any::<u64>()) {
        let c = category(s);
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 2);
        let x = random_presheaf(&mut rng, &c);
        let keep: Vec<Vec<bool>> = (0..c.object_count()).map(|a| (0..x.size(a)).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let keep = down_closure(&x, keep);
        let mid = x.subpresheaf(&keep).unwrap();
        let keep2: Vec<Vec<bool>> = (0..c.object_count()).map(|a| (0..mid.size(a)).map(|_| rng.gen_bool(0.5)).collect()).collect();
        let low = mid.subpresheaf(&down_closure(&mid, keep2)).unwrap();
        let (i, j) = (inclusion(&low, &mid), inclusion(&mid, &x));
        prop_assert!(i.validate(&low, &mid).is_empty());
        let (el, em, ex) = (elements(&low).unwrap(), elements(&mid).unwrap(), elements(&x).unwrap());
        let fi = elements_map(&i, &el, &em, &c);
        let fj = elements_map(&j, &em, &ex, &c);
        prop_assert!(fi.validate().is_empty());
        prop_assert!(fj.validate().is_empty());
        prop_assert_eq!(fi.then(&fj), elements_map(&i.then(&j), &el, &ex, &c));
        prop_assert_eq!(elements_map(&PresheafMorphism::identity(&x), &ex, &ex, &c), FunctorData::identity(ex.category.clone()));
        prop_assert_eq!(fj.then(&ex.projection(c.clone())), em.projection(c.clone()));
    }

    #[test]
    fn nerve_counts_chains_and_truncates(s in any::<u64>()) {
        let c = category(s);
        let n3 = nerve(&c, 3, &budget()).unwrap();
        let n2 = nerve(&c, 2, &budget()).unwrap();
        prop_assert!(n3.validate().is_empty());
        for n in 0..=3 {
            prop_assert_eq!(n3.cells(n).len(), chains(&c, n));
        }
        prop_assert_eq!(&n3.counts()[..n2.counts().len()], &n2.counts()[..]);
    }

    #[test]
    fn omega_classifies_subobjects(s in any::<u64>()) {
        let c = category(s);
        prop_assume!(c.morphism_count() <= 12);
        let omega = subobject_classifier(c.clone(), 4096).unwrap();
        prop_assert!(omega.validate().is_empty());
        for a in 0..c.object_count() {
            let found: BTreeSet<Vec<String>> = omega.elements(a).iter().map(|e| parse_sieve(e)).collect();
            prop_assert_eq!(found.len(), omega.size(a));
            prop_assert_eq!(found, brute_sieves(&c, a));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(s ^ 3);
        let x = random_presheaf(&mut rng, &c);
        let keep: Vec<Vec<bool>> = (0..c.object_count()).map(|a| (0..x.size(a)).map(|_| rng.gen_bool(0.4)).collect()).collect();
        let keep = down_closure(&x, keep);
        let chi = characteristic(&x, &keep, &omega);
        prop_assert!(chi.validate(&x, &omega).is_empty());
        for a in 0..c.object_count() {
            let top = {
                let mut ids: Vec<&str> = c.incoming(a).iter().map(|&g| c.morphisms()[g].id.as_str()).collect();
                ids.sort_unstable();
                omega.element(a, &format!("{{{}}}", ids.join(","))).unwrap()
            };
            for e in 0..x.size(a) {
                prop_assert_eq!(chi.components[a][e] == top, keep[a][e]);
            }
        }
    }
}
