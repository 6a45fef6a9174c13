mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use shapecalc::catcore::catalog;
use shapecalc::complex::Operator;
use shapecalc::cubical::{
    cube, cube_boundary, cube_compose, cube_horn, tensor, triangulate, CubeMorphism, CubicalSet, Slot,
};
use shapecalc::error::Budget;
use shapecalc::invariants::homology;
use shapecalc::shape::shape_invariants;

fn budget() -> Budget {
    Budget::new("test", 20_000_000)
}

/// A cube map `□^m -> □^n` in normal form: used coordinates keep their order.
fn cube_map(m: usize, n: usize) -> impl Strategy<Value = CubeMorphism> {
    (proptest::collection::vec(any::<bool>(), n), proptest::collection::vec(any::<bool>(), n)).prop_map(
        move |(var, bit)| {
            let mut next = 0u8;
            let slots = (0..n)
                .map(|k| {
                    if var[k] && (next as usize) < m {
                        next += 1;
                        Slot::Var(next - 1)
                    } else {
                        Slot::Const(bit[k])
                    }
                })
                .collect();
            // unused source coordinates are fine: they are degeneracies
            CubeMorphism::new(m, slots).unwrap()
        },
    )
}

fn points(m: usize) -> Vec<Vec<bool>> {
    (0..1usize << m).map(|b| (0..m).map(|i| b >> i & 1 == 1).collect()).collect()
}

fn small_cubical(k: usize) -> CubicalSet {
    match k % 7 {
        0 => cube(0),
        1 => cube(1),
        2 => cube(2),
        3 => cube_boundary(1),
        4 => cube_boundary(2),
        5 => cube_horn(2, 1, false).unwrap(),
        _ => cube_horn(2, 2, true).unwrap(),
    }
}

/// `d_{j,η} then d_{i,ε}` equals `d_{i,ε} then d_{j-1,η}` for `i < j`, on every cube.
fn cubical_identities(x: &CubicalSet, top: usize) -> bool {
    let slot = |i: usize, e: usize| 2 * (i - 1) + e;
    (2..=top).all(|n| {
        x.simplices(n).iter().all(|s| {
            (1..=n).all(|j| {
                (1..j).all(|i| {
                    (0..2).all(|e| {
                        (0..2).all(|h| {
                            x.face(&x.face(s, slot(j, h)), slot(i, e)) == x.face(&x.face(s, slot(i, e)), slot(j - 1, h))
                        })
                    })
                })
            })
        })
    })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn composition_matches_evaluation(
        (f, g) in (0usize..4, 0usize..4, 0usize..4).prop_flat_map(|(a, b, c)| (cube_map(a, b), cube_map(b, c)))
    ) {
        let gf = cube_compose(&g, &f).unwrap();
        prop_assert_eq!(gf.source(), f.source());
        prop_assert_eq!(gf.target(), g.target());
        for p in points(f.source()) {
            prop_assert_eq!(gf.eval(&p), g.eval(&f.eval(&p)));
        }
    }

    #[test]
    fn degeneracy_words_round_trip(keep in proptest::collection::vec(any::<bool>(), 0..5)) {
        let kept: Vec<Slot> = (0..keep.len() as u8).filter(|&i| keep[i as usize]).map(Slot::Var).collect();
        let n = kept.len();
        let f = CubeMorphism::new(keep.len(), kept).unwrap();
        prop_assert_eq!(CubeMorphism::parse_word(&f.word(), n).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn tensor_is_associative_up_to_counts_and_homology(a in 0usize..7, b in 0usize..7, c in 0usize..7) {
        let (x, y, z) = (small_cubical(a), small_cubical(b), small_cubical(c));
        let bud = budget();
        let xy_z = tensor(&tensor(&x, &y, 6, &bud).unwrap().complex, &z, 6, &bud).unwrap().complex;
        let x_yz = tensor(&x, &tensor(&y, &z, 6, &bud).unwrap().complex, 6, &bud).unwrap().complex;
        prop_assert!(xy_z.validate().is_empty());
        prop_assert!(cubical_identities(&xy_z, 4));
        prop_assert_eq!(xy_z.counts(), x_yz.counts());
        prop_assert_eq!(betti_oracle(&xy_z, 5), betti_oracle(&x_yz, 5));
        prop_assert_eq!(xy_z.euler_characteristic(), x.euler_characteristic() * y.euler_characteristic() * z.euler_characteristic());
    }

    #[test]
    fn triangulation_preserves_homology(a in 0usize..7, b in 0usize..7) {
        let x = tensor(&small_cubical(a), &small_cubical(b), 4, &budget()).unwrap().complex;
        let t = triangulate(&x, 5, &budget()).unwrap();
        prop_assert!(t.validate().is_empty());
        prop_assert_eq!(betti_oracle(&t, 4), betti_oracle(&x, 4));
    }
}

#[test]
fn faces_compose_as_cube_maps() {
    for n in 0..=4 {
        for x in [cube(n), cube_boundary(n)] {
            assert!(cubical_identities(&x, n));
            for s in x.simplices(n.min(3)) {
                let m = s.dim();
                for i in 1..=m {
                    for e in [false, true] {
                        let d = CubeMorphism::delta(m, i, e).unwrap();
                        assert_eq!(x.act(&s, &d), x.face(&s, 2 * (i - 1) + e as usize));
                        let back = cube_compose(&d, &CubeMorphism::sigma(m, i).unwrap()).unwrap();
                        assert_eq!(x.act(&x.act(&s, &d), &CubeMorphism::sigma(m, i).unwrap()), x.act(&s, &back));
                    }
                }
            }
        }
    }
}

#[test]
fn categorical_product_and_tensor_disagree() {
    let t = tensor(&cube(1), &cube(1), 4, &budget()).unwrap();
    assert_eq!(t.complex.counts(), cube(2).counts());
    assert_eq!(homology(&triangulate(&t.complex, 3, &budget()).unwrap(), 2).unwrap().betti(), vec![1, 0, 0]);
    let base = Arc::new(catalog::truncated::<CubeMorphism>(2));
    let i = catalog::complex_as_presheaf(&cube(1), base, 2).unwrap();
    let r = shape_invariants(&i.product(&i).unwrap(), 2, &budget()).unwrap();
    assert_eq!(r.homology.betti(), vec![1, 1, 1]);
}
