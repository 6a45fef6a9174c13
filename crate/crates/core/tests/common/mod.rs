#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shapecalc::catcore::{catalog, FiniteCategory, PresheafMorphism, SetPresheaf};
use shapecalc::complex::{CellId, Complex, ComplexMap, Operator, Simplex};
use shapecalc::cubical::CubeMorphism;
use shapecalc::simplicial::{Monotone, SimplicialMap, SimplicialSet};

pub const DEFAULT_SEED: u64 = 0x5eed_0517;

/// `SHAPECALC_SEED` when set, otherwise a fixed default.
pub fn seed() -> u64 {
    std::env::var("SHAPECALC_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed() ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Faces of `s` in slot order.
fn faces(x: &SimplicialSet, s: &Simplex<Monotone>) -> Vec<Simplex<Monotone>> {
    (0..=s.dim()).map(|i| x.face(s, i)).collect()
}

/// A random simplicial set with at most `max_cells` nondegenerate cells in dimensions
/// `<= max_dim`. Faces are drawn from all simplices, degenerate ones included, subject to the
/// simplicial identities, so loops, multi-edges and collapsed faces all occur.
pub fn random_simplicial_set(rng: &mut impl Rng, max_dim: usize, max_cells: usize) -> SimplicialSet {
    random_simplicial_set_with(rng, max_dim, max_cells, true)
}

/// As above; with `degenerate_faces` off, every face of a cell is a nondegenerate simplex.
pub fn random_simplicial_set_with(rng: &mut impl Rng, max_dim: usize, max_cells: usize, degenerate_faces: bool) -> SimplicialSet {
    let mut x = SimplicialSet::new();
    let vertices = rng.gen_range(1..=4.min(max_cells));
    for v in 0..vertices {
        x.add_cell(0, format!("v{v}"), Vec::new()).unwrap();
    }
    let target = rng.gen_range(vertices..=max_cells);
    let mut total = vertices;
    let mut attempts = 0;
    while total < target && attempts < 400 {
        attempts += 1;
        let top = x.dim().unwrap_or(0);
        let n = rng.gen_range(1..=max_dim.min(top + 1));
        let pool: Vec<Simplex<Monotone>> = if degenerate_faces {
            x.simplices(n - 1)
        } else {
            x.cell_ids(n - 1).map(Simplex::nondegenerate).collect()
        };
        let mut chosen: Vec<Simplex<Monotone>> = Vec::new();
        for i in 0..=n {
            let ok: Vec<&Simplex<Monotone>> = pool
                .iter()
                .filter(|f| {
                    n < 2 || (0..i).all(|j| x.face(f, j) == x.face(&chosen[j], i - 1))
                })
                .collect();
            match ok.choose(rng) {
                Some(f) => chosen.push((*f).clone()),
                None => break,
            }
        }
        if chosen.len() == n + 1 {
            x.add_cell(n, format!("c{n}n{}", x.cells(n).len()), chosen).unwrap();
            total += 1;
        }
    }
    assert!(x.validate().is_empty(), "generator produced an invalid complex");
    x
}

/// Ranks over GF(p) of the normalized boundary maps, assembled from the stored faces only.
pub fn betti_oracle<O: Operator>(x: &Complex<O>, dmax: usize) -> Vec<usize> {
    const P: i64 = 1_000_003;
    let boundary = |n: usize| -> Vec<Vec<i64>> {
        let rows = x.cells(n - 1).len();
        x.cells(n)
            .iter()
            .map(|c| {
                let mut col = vec![0i64; rows];
                for (slot, f) in c.faces.iter().enumerate() {
                    if f.is_nondegenerate() {
                        col[f.cell.index] = (col[f.cell.index] + O::face_sign(n, slot)).rem_euclid(P);
                    }
                }
                col
            })
            .collect()
    };
    let rank = |mut cols: Vec<Vec<i64>>| -> usize {
        let mut r = 0;
        let rows = cols.first().map_or(0, |c| c.len());
        for row in 0..rows {
            let Some(p) = (r..cols.len()).find(|&j| cols[j][row] != 0) else { continue };
            cols.swap(r, p);
            let inv = modpow(cols[r][row], P - 2, P);
            for j in 0..cols.len() {
                if j != r && cols[j][row] != 0 {
                    let k = cols[j][row] * inv % P;
                    for i in 0..rows {
                        cols[j][i] = (cols[j][i] - k * cols[r][i]).rem_euclid(P);
                    }
                }
            }
            r += 1;
        }
        r
    };
    let ranks: Vec<usize> = (0..=dmax + 1).map(|n| if n == 0 { 0 } else { rank(boundary(n)) }).collect();
    (0..=dmax).map(|n| x.cells(n).len() - ranks[n] - ranks[n + 1]).collect()
}

fn modpow(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Applies a cellwise assignment to any simplex.
pub fn apply<O: Operator>(target: &Complex<O>, images: &HashMap<CellId, Simplex<O>>, s: &Simplex<O>) -> Simplex<O> {
    target.act(&images[&s.cell], &s.op)
}

/// Every simplicial map `a -> b`, by assigning cells in dimension order and checking faces.
/// Shares nothing with the library's map search.
pub fn naive_maps<O: Operator>(a: &Complex<O>, b: &Complex<O>) -> Vec<ComplexMap<O>> {
    let cells: Vec<CellId> = a.all_cell_ids().collect();
    let pools: Vec<Vec<Simplex<O>>> = (0..=a.dim().unwrap_or(0)).map(|n| b.simplices(n)).collect();
    let mut out = Vec::new();
    let mut images: HashMap<CellId, Simplex<O>> = HashMap::new();
    fn go<O: Operator>(
        k: usize,
        a: &Complex<O>,
        b: &Complex<O>,
        cells: &[CellId],
        pools: &[Vec<Simplex<O>>],
        images: &mut HashMap<CellId, Simplex<O>>,
        out: &mut Vec<ComplexMap<O>>,
    ) {
        if k == cells.len() {
            let rows = (0..=a.dim().unwrap_or(0))
                .map(|n| a.cell_ids(n).map(|c| images[&c].clone()).collect())
                .collect();
            out.push(ComplexMap::new(rows));
            return;
        }
        let c = cells[k];
        let cell_faces = &a.cell(c).faces;
        for s in &pools[c.dim] {
            let fits = cell_faces
                .iter()
                .enumerate()
                .all(|(slot, f)| b.face(s, slot) == apply(b, images, f));
            if fits {
                images.insert(c, s.clone());
                go(k + 1, a, b, cells, pools, images, out);
                images.remove(&c);
            }
        }
    }
    go(0, a, b, &cells, &pools, &mut images, &mut out);
    out
}

/// Composite `g ∘ f` computed cellwise.
pub fn compose<O: Operator>(f: &ComplexMap<O>, g: &ComplexMap<O>, middle: &Complex<O>, target: &Complex<O>) -> Vec<Simplex<O>> {
    let gi: HashMap<CellId, Simplex<O>> = middle.all_cell_ids().map(|c| (c, g.image(c).clone())).collect();
    f.images().iter().flatten().map(|s| apply(target, &gi, s)).collect()
}

/// Brute-force lifting test: every commuting square and every candidate diagonal.
pub fn naive_boxslash<O: Operator>(
    (a, b, i): (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    (x, y, p): (&Complex<O>, &Complex<O>, &ComplexMap<O>),
) -> (bool, usize) {
    let tops = naive_maps(a, x);
    let bottoms = naive_maps(b, y);
    let diagonals = naive_maps(b, x);
    let mut squares = 0;
    let mut holds = true;
    for f in &tops {
        let pf = compose(f, p, x, y);
        for g in &bottoms {
            if compose(i, g, b, y) != pf {
                continue;
            }
            squares += 1;
            let f_cells: Vec<Simplex<O>> = f.images().iter().flatten().cloned().collect();
            let g_cells: Vec<Simplex<O>> = g.images().iter().flatten().cloned().collect();
            let lifted = diagonals
                .iter()
                .any(|h| compose(i, h, b, x) == f_cells && compose(h, p, x, y) == g_cells);
            holds &= lifted;
        }
    }
    (holds, squares)
}

/// Small categories for property tests: catalog shapes and random posets.
pub fn small_categories(rng: &mut impl Rng, posets: usize) -> Vec<Arc<FiniteCategory>> {
    let mut out = vec![
        Arc::new(catalog::terminal()),
        Arc::new(catalog::arrow()),
        Arc::new(catalog::cyclic(2)),
        Arc::new(catalog::cyclic(3)),
        Arc::new(catalog::truncated::<Monotone>(1)),
        Arc::new(catalog::truncated::<CubeMorphism>(1)),
        Arc::new(catalog::contractible_groupoid(&["a", "b"])),
    ];
    for _ in 0..posets {
        out.push(Arc::new(random_poset(rng, 4)));
    }
    out
}

pub fn random_poset(rng: &mut impl Rng, max: usize) -> FiniteCategory {
    let n = rng.gen_range(1..=max);
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.4) {
                rel.push((refs[i], refs[j]));
            }
        }
    }
    catalog::poset(&refs, &rel)
}

/// Closes a choice of elements downward under the action.
pub fn down_closure(x: &SetPresheaf, mut keep: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let c = &x.base;
    loop {
        let mut changed = false;
        for f in 0..c.morphism_count() {
            let (a, b) = (c.source(f), c.target(f));
            for y in 0..x.size(b) {
                if keep[b][y] && !keep[a][x.act(f, y)] {
                    keep[a][x.act(f, y)] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return keep;
        }
    }
}

/// A random presheaf: a coproduct of representables, possibly cut down to a subpresheaf.
pub fn random_presheaf(rng: &mut impl Rng, c: &Arc<FiniteCategory>) -> SetPresheaf {
    let mut x = SetPresheaf::representable(c.clone(), rng.gen_range(0..c.object_count()));
    for _ in 0..rng.gen_range(0..2) {
        let y = SetPresheaf::representable(c.clone(), rng.gen_range(0..c.object_count()));
        x = x.coproduct(&y).unwrap();
    }
    if rng.gen_bool(0.5) {
        let keep: Vec<Vec<bool>> = (0..c.object_count()).map(|a| (0..x.size(a)).map(|_| rng.gen_bool(0.3)).collect()).collect();
        let keep = down_closure(&x, keep);
        if keep.iter().flatten().any(|&k| k) {
            x = x.subpresheaf(&keep).unwrap();
        }
    }
    x
}

/// The inclusion of a subpresheaf, matching elements by id.
pub fn inclusion(sub: &SetPresheaf, x: &SetPresheaf) -> PresheafMorphism {
    PresheafMorphism {
        components: (0..x.base.object_count())
            .map(|a| sub.elements(a).iter().map(|e| x.element(a, e).unwrap()).collect())
            .collect(),
    }
}

/// Vertex-subset complex on `facets`, for fixtures.
pub fn facets(f: &[&[usize]]) -> SimplicialSet {
    shapecalc::simplicial::generators::from_facets(&f.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn rp2() -> SimplicialSet {
    facets(&[
        &[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 5], &[0, 1, 5],
        &[1, 2, 4], &[2, 3, 5], &[1, 3, 4], &[1, 3, 5], &[2, 4, 5],
    ])
}

pub fn ids<O: Operator>(x: &Complex<O>, names: &[&str]) -> Vec<CellId> {
    names.iter().map(|n| x.find(n).unwrap_or_else(|| panic!("no cell {n}"))).collect()
}

pub fn map_by_ids(source: &SimplicialSet, target: &SimplicialSet, pairs: &[(&str, &str)]) -> SimplicialMap {
    let lookup: HashMap<&str, &str> = pairs.iter().copied().collect();
    let rows = (0..=source.dim().unwrap_or(0))
        .map(|n| {
            source
                .cell_ids(n)
                .map(|c| target.parse_reference(lookup[source.id(c)]).unwrap())
                .collect()
        })
        .collect();
    let m = ComplexMap::new(rows);
    m.validate(source, target).into_result("fixture map").unwrap();
    m
}

/// The constant map to a one-vertex target.
pub fn to_point(x: &SimplicialSet, pt: &SimplicialSet) -> SimplicialMap {
    ComplexMap::constant(x, pt.cell_ids(0).next().unwrap())
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Default::default()
    }
}

const P: i64 = 1_000_003;

fn mod_rank(mut cols: Vec<Vec<i64>>, rows: usize) -> usize {
    let mut r = 0;
    for row in 0..rows {
        let Some(p) = (r..cols.len()).find(|&j| cols[j][row] != 0) else { continue };
        cols.swap(r, p);
        let inv = modpow(cols[r][row], P - 2, P);
        for j in 0..cols.len() {
            if j != r && cols[j][row] != 0 {
                let k = cols[j][row] * inv % P;
                for i in 0..rows {
                    cols[j][i] = (cols[j][i] - k * cols[r][i]).rem_euclid(P);
                }
            }
        }
        r += 1;
    }
    r
}

fn boundary_columns<O: Operator>(x: &Complex<O>, n: usize) -> Vec<Vec<i64>> {
    let rows = if n == 0 { 0 } else { x.cells(n - 1).len() };
    x.cells(n)
        .iter()
        .map(|c| {
            let mut col = vec![0i64; rows];
            if n > 0 {
                for (slot, f) in c.faces.iter().enumerate() {
                    if f.is_nondegenerate() {
                        col[f.cell.index] = (col[f.cell.index] + O::face_sign(n, slot)).rem_euclid(P);
                    }
                }
            }
            col
        })
        .collect()
}

/// Kernel basis of a column map `GF(p)^cols -> GF(p)^rows`.
fn kernel(cols: &[Vec<i64>], rows: usize) -> Vec<Vec<i64>> {
    let n = cols.len();
    // row-reduce the transpose view: solve A v = 0
    let mut a: Vec<Vec<i64>> = (0..rows).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = modpow(a[r][c], P - 2, P);
        for v in a[r].iter_mut() {
            *v = *v * inv % P;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..n {
                    a[i][j] = (a[i][j] - k * a[r][j]).rem_euclid(P);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0i64; n];
            v[f] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = (P - a[k][f]) % P;
            }
            v
        })
        .collect()
}

/// Rank over GF(p) of the map `H_n(x) -> H_n(y)` induced by `f`.
pub fn induced_rank<O: Operator>(f: &ComplexMap<O>, x: &Complex<O>, y: &Complex<O>, n: usize) -> usize {
    let cycles = kernel(&boundary_columns(x, n), if n == 0 { 0 } else { x.cells(n - 1).len() });
    let rows = y.cells(n).len();
    let pushed: Vec<Vec<i64>> = cycles
        .iter()
        .map(|z| {
            let mut v = vec![0i64; rows];
            for (k, &coef) in z.iter().enumerate() {
                let s = f.image(CellId { dim: n, index: k });
                if coef != 0 && s.is_nondegenerate() {
                    v[s.cell.index] = (v[s.cell.index] + coef) % P;
                }
            }
            v
        })
        .collect();
    let bounds = boundary_columns(y, n + 1);
    let b = mod_rank(bounds.clone(), rows);
    let mut all = pushed;
    all.extend(bounds);
    mod_rank(all, rows) - b
}

pub type Dense = Vec<Vec<num_bigint::BigInt>>;

pub fn dense(m: &shapecalc::invariants::IntMatrix) -> Dense {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect()).collect()
}

pub fn mat_mul(a: &Dense, b: &Dense, inner: usize, cols: usize) -> Dense {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
pub fn det(m: &Dense) -> num_bigint::BigInt {
    use num_traits::{One, Zero};
    let n = m.len();
    let mut a = m.clone();
    let mut sign = num_bigint::BigInt::one();
    let mut prev = num_bigint::BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return num_bigint::BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        sign
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Certifies a Smith form from scratch: unimodular transforms, a diagonal with a divisibility
/// chain of positive entries, and `left * m * right == diagonal`.
pub fn certify_smith(m: &[Vec<i64>], s: &shapecalc::invariants::SmithForm) -> Result<(), String> {
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mm: Dense = m.iter().map(|r| r.iter().map(|&v| v.into()).collect()).collect();
    let (l, r, d) = (dense(&s.left), dense(&s.right), dense(&s.diagonal));
    if det(&l).abs() != num_bigint::BigInt::one() || det(&r).abs() != num_bigint::BigInt::one() {
        return Err("transform is not unimodular".into());
    }
    if mat_mul(&mat_mul(&l, &mm, rows, cols), &r, cols, cols) != d {
        return Err("left * m * right differs from the diagonal".into());
    }
    for i in 0..rows {
        for j in 0..cols {
            let want = if i == j && i < s.factors.len() { s.factors[i].clone() } else { num_bigint::BigInt::zero() };
            if d[i][j] != want {
                return Err(format!("diagonal entry ({i},{j}) is {} not {want}", d[i][j]));
            }
        }
    }
    if s.factors.iter().any(|f| !f.is_positive()) {
        return Err("nonpositive invariant factor".into());
    }
    if s.factors.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
        return Err("invariant factors do not divide each other".into());
    }
    Ok(())
}

/// Gcd of all `k x k` minors, for small matrices.
pub fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> num_bigint::BigInt {
    use num_integer::Integer;
    use num_traits::Zero;
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        (k - 1..n)
            .flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| { s.push(last); s }))
            .collect()
    }
    let cols = m.first().map_or(0, Vec::len);
    let mut g = num_bigint::BigInt::zero();
    for rs in subsets(m.len(), k) {
        for cs in subsets(cols, k) {
            let minor: Dense = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].into()).collect()).collect();
            g = g.gcd(&det(&minor));
        }
    }
    g
}
