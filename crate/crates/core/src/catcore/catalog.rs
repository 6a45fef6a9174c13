//! Small categories used as probes, and the bridge from complexes to presheaves.

use std::collections::HashMap;
use std::sync::Arc;

use super::{CategoryBuilder, FiniteCategory, Morphism, SetPresheaf};
use crate::complex::{Complex, Operator, Simplex};
use crate::error::Result;

pub fn terminal() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object("*");
    b.build().expect("valid")
}

pub fn discrete(objects: &[&str]) -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    for o in objects {
        b.object(*o);
    }
    b.build().expect("valid")
}

/// `a -> b` with the single arrow `f`.
pub fn arrow() -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object("a").object("b").morphism("f", "a", "b");
    b.build().expect("valid")
}

/// The cyclic group of order `n` as a one-object category; `g<k>` is the k-th power.
pub fn cyclic(n: usize) -> FiniteCategory {
    let mut b = CategoryBuilder::new();
    b.object("*");
    let name = |k: usize| if k == 0 { "id_*".to_string() } else { format!("g{k}") };
    for k in 1..n {
        b.morphism(name(k), "*", "*");
    }
    for i in 1..n {
        for j in 1..n {
            b.compose(name(i), name(j), name((i + j) % n));
        }
    }
    b.build().expect("valid")
}

/// The poset generated by `relations` (pairs `x <= y`); morphisms are named `x<y`.
pub fn poset(elements: &[&str], relations: &[(&str, &str)]) -> FiniteCategory {
    let n = elements.len();
    let pos: HashMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for (x, y) in relations {
        le[pos[x]][pos[y]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let name = |i: usize, j: usize| {
        if i == j {
            format!("id_{}", elements[i])
        } else {
            format!("{}<{}", elements[i], elements[j])
        }
    };
    let mut b = CategoryBuilder::new();
    for e in elements {
        b.object(*e);
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i][j] {
                b.morphism(name(i, j), elements[i], elements[j]);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if le[i][j] && le[j][k] && i != j && j != k {
                    b.compose(name(j, k), name(i, j), name(i, k));
                }
            }
        }
    }
    b.build().expect("valid")
}

/// The groupoid with exactly one arrow `x>y` between any two objects.
pub fn contractible_groupoid(objects: &[&str]) -> FiniteCategory {
    let name = |x: &str, y: &str| if x == y { format!("id_{x}") } else { format!("{x}>{y}") };
    let mut b = CategoryBuilder::new();
    for x in objects {
        b.object(*x);
    }
    for x in objects {
        for y in objects {
            if x != y {
                b.morphism(name(x, y), *x, *y);
            }
        }
    }
    for x in objects {
        for y in objects {
            for z in objects {
                if x != y && y != z {
                    b.compose(name(y, z), name(x, y), name(x, z));
                }
            }
        }
    }
    b.build().expect("valid")
}

/// The full subcategory of Δ (or □) on the objects of dimension `<= n`.
pub fn truncated<O: Operator>(n: usize) -> FiniteCategory {
    let mut ops: Vec<(String, O)> = Vec::new();
    for m in 0..=n {
        for k in 0..=n {
            for op in O::all(m, k) {
                ops.push((op.morphism_id(), op));
            }
        }
    }
    ops.sort_by(|a, b| a.0.cmp(&b.0));
    let mut objects: Vec<(String, usize)> = (0..=n).map(|k| (O::object_id(k), k)).collect();
    objects.sort();
    let obj_pos: HashMap<usize, usize> = objects.iter().enumerate().map(|(i, (_, k))| (*k, i)).collect();
    let op_pos: HashMap<&O, usize> = ops.iter().enumerate().map(|(i, (_, op))| (op, i)).collect();
    let morphisms = ops
        .iter()
        .map(|(id, op)| Morphism {
            id: id.clone(),
            source: obj_pos[&op.source()],
            target: obj_pos[&op.target()],
        })
        .collect();
    let identities = objects.iter().map(|(_, k)| op_pos[&O::identity(*k)]).collect();
    let mut composition = HashMap::new();
    for (fi, (_, f)) in ops.iter().enumerate() {
        for (gi, (_, g)) in ops.iter().enumerate() {
            if f.target() == g.source() {
                composition.insert((gi, fi), op_pos[&g.after(f)]);
            }
        }
    }
    FiniteCategory::from_parts(objects.into_iter().map(|(id, _)| id).collect(), morphisms, identities, composition, false)
        .expect("well-formed")
}

/// A complex as a presheaf on the `n`-truncated shape category: `X(k)` is every `k`-simplex,
/// degenerate ones included, named by their labels.
pub fn complex_as_presheaf<O: Operator>(x: &Complex<O>, base: Arc<FiniteCategory>, n: usize) -> Result<SetPresheaf> {
    let mut simplices: Vec<Vec<Simplex<O>>> = Vec::new();
    let mut object_dims = vec![0; base.object_count()];
    for k in 0..=n {
        let a = base.object(&O::object_id(k)).expect("truncated shape category");
        object_dims[a] = k;
        simplices.push(x.simplices(k));
    }
    let index: Vec<HashMap<&Simplex<O>, usize>> =
        simplices.iter().map(|row| row.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let elements = object_dims
        .iter()
        .map(|&k| simplices[k].iter().map(|s| x.label(s)).collect())
        .collect();
    let action = base
        .morphisms()
        .iter()
        .map(|m| {
            let op = O::all(object_dims[m.source], object_dims[m.target])
                .into_iter()
                .find(|op| op.morphism_id() == m.id)
                .expect("morphism of the shape category");
            simplices[object_dims[m.target]]
                .iter()
                .map(|s| index[object_dims[m.source]][&x.act(s, &op)])
                .collect()
        })
        .collect();
    SetPresheaf::new(base, elements, action)
}
