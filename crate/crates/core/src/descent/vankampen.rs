use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_traits::ToPrimitive;

use super::cech::closure;
use crate::complex::{CellId, Operator, Simplex};
use crate::error::{Error, Result};
use crate::invariants::snf::{rank, smith_normal_form, SparseMatrix};
use crate::invariants::{chain_complex, pi1_presentation, ChainComplex, GroupPresentation, DEFAULT_TIETZE_BUDGET};
use crate::invariants::pi1::Letter;
use crate::simplicial::{Monotone, SimplicialSet};

/// Ranks in one degree of the Mayer–Vietoris sequence
/// `H(U∩V) -i-> H(U) ⊕ H(V) -j-> H(X) -∂-> H(U∩V)[-1]`, over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MayerVietorisRow {
    pub degree: usize,
    pub betti_intersection: usize,
    pub betti_u: usize,
    pub betti_v: usize,
    pub betti_x: usize,
    pub rank_i: usize,
    pub rank_j: usize,
    /// rank of `∂` out of degree `degree`
    pub rank_connecting: usize,
    /// exactness at `H(U∩V)` and at `H(U) ⊕ H(V)`
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanKampenReport {
    pub degree_bound: usize,
    pub mayer_vietoris: Vec<MayerVietorisRow>,
    pub mayer_vietoris_holds: bool,
    pub basepoint: String,
    /// least vertex of each component of `U ∩ V`, the basepoint's component first
    pub intersection_basepoints: Vec<String>,
    pub amalgamated: GroupPresentation,
    pub ambient: GroupPresentation,
    pub abelianizations_agree: bool,
}

impl fmt::Display for VanKampenReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree-bound {}", self.degree_bound)?;
        for r in &self.mayer_vietoris {
            writeln!(
                f,
                "mv {} betti U∩V={} U={} V={} X={} ranks i={} j={} connecting={} exact={}",
                r.degree, r.betti_intersection, r.betti_u, r.betti_v, r.betti_x, r.rank_i, r.rank_j, r.rank_connecting, r.exact
            )?;
        }
        writeln!(f, "mayer-vietoris {}", if self.mayer_vietoris_holds { "holds" } else { "fails" })?;
        writeln!(f, "basepoint {}", self.basepoint)?;
        writeln!(f, "intersection-components {}", self.intersection_basepoints.join(" "))?;
        if self.intersection_basepoints.len() > 1 {
            writeln!(f, "note one extra generator per additional intersection component")?;
        }
        writeln!(f, "amalgamated {}", self.amalgamated)?;
        writeln!(f, "amalgamated-abelianization {}", self.amalgamated.abelianization())?;
        writeln!(f, "ambient {}", self.ambient)?;
        writeln!(f, "ambient-abelianization {}", self.ambient.abelianization())?;
        writeln!(f, "abelianizations-agree {}", self.abelianizations_agree)
    }
}

struct Chains {
    cc: ChainComplex,
    /// position of each sub-cell in the ambient basis, per degree
    embed: Vec<Vec<usize>>,
}

fn chains(x: &SimplicialSet, cells: &BTreeSet<CellId>, top: usize) -> Result<Chains> {
    let sub = x.restrict_to(cells).0;
    let embed = (0..=top)
        .map(|n| sub.cell_ids(n).map(|c| x.find(sub.id(c)).expect("subcomplex of x").index).collect())
        .collect();
    Ok(Chains {
        cc: chain_complex(&sub, top)?,
        embed,
    })
}

fn boundary_rank(c: &ChainComplex, n: usize) -> usize {
    rank(&c.boundary(n))
}

fn betti(c: &ChainComplex, n: usize) -> usize {
    c.rank(n) - boundary_rank(c, n) - boundary_rank(c, n + 1)
}

/// An integer basis of the `n`-cycles.
fn cycles(c: &ChainComplex, n: usize) -> Result<Vec<Vec<(usize, i64)>>> {
    let d = c.boundary(n);
    let size = c.rank(n);
    if d.rows == 0 {
        return Ok((0..size).map(|i| vec![(i, 1)]).collect());
    }
    let snf = smith_normal_form(&d.to_dense());
    (snf.rank()..size)
        .map(|j| {
            (0..size)
                .filter_map(|i| {
                    let v = snf.right.get(i, j);
                    (v.sign() != num_bigint::Sign::NoSign).then(|| v.to_i64().map(|v| (i, v)))
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::invalid("cycle coefficient exceeds 64 bits"))
        })
        .collect()
}

fn embedded(col: &[(usize, i64)], embed: &[usize], offset: usize, sign: i64) -> Vec<(usize, i64)> {
    col.iter().map(|&(i, v)| (embed[i] + offset, sign * v)).collect()
}

fn mayer_vietoris(x: &SimplicialSet, u: &BTreeSet<CellId>, v: &BTreeSet<CellId>, w: &BTreeSet<CellId>, d: usize) -> Result<Vec<MayerVietorisRow>> {
    let top = d + 2;
    let all: BTreeSet<CellId> = x.all_cell_ids().collect();
    let (cx, cu, cv, cw) = (chains(x, &all, top)?, chains(x, u, top)?, chains(x, v, top)?, chains(x, w, top)?);
    let mut rank_i = Vec::new();
    let mut rank_j = Vec::new();
    for n in 0..=d + 1 {
        // image of H(U) ⊕ H(V) in H(X)
        let mut cols: Vec<Vec<(usize, i64)>> = Vec::new();
        for z in cycles(&cu.cc, n)? {
            cols.push(embedded(&z, &cu.embed[n], 0, 1));
        }
        for z in cycles(&cv.cc, n)? {
            cols.push(embedded(&z, &cv.embed[n], 0, 1));
        }
        let bx = cx.cc.boundary(n + 1);
        cols.extend(bx.columns.iter().cloned());
        rank_j.push(rank(&SparseMatrix::new(cx.cc.rank(n), cols)) - rank(&bx));
        // image of H(U∩V) in H(U) ⊕ H(V), as z ↦ (z, -z); the sign does not change the rank
        let width_u = cu.cc.rank(n);
        let mut cols: Vec<Vec<(usize, i64)>> = Vec::new();
        let ambient_to_u: HashMap<usize, usize> = cu.embed[n].iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let ambient_to_v: HashMap<usize, usize> = cv.embed[n].iter().enumerate().map(|(i, &a)| (a, i)).collect();
        for z in cycles(&cw.cc, n)? {
            let mut col: Vec<(usize, i64)> = z.iter().map(|&(i, c)| (ambient_to_u[&cw.embed[n][i]], c)).collect();
            col.extend(z.iter().map(|&(i, c)| (width_u + ambient_to_v[&cw.embed[n][i]], -c)));
            cols.push(col);
        }
        let (bu, bv) = (cu.cc.boundary(n + 1), cv.cc.boundary(n + 1));
        cols.extend(bu.columns.iter().cloned());
        cols.extend(bv.columns.iter().map(|c| embedded(c, &(0..cv.cc.rank(n)).collect::<Vec<_>>(), width_u, 1)));
        rank_i.push(rank(&SparseMatrix::new(width_u + cv.cc.rank(n), cols)) - rank(&bu) - rank(&bv));
    }
    let connecting: Vec<usize> = (0..=d + 1).map(|n| betti(&cx.cc, n) - rank_j[n]).collect();
    Ok((0..=d)
        .map(|n| {
            let row = MayerVietorisRow {
                degree: n,
                betti_intersection: betti(&cw.cc, n),
                betti_u: betti(&cu.cc, n),
                betti_v: betti(&cv.cc, n),
                betti_x: betti(&cx.cc, n),
                rank_i: rank_i[n],
                rank_j: rank_j[n],
                rank_connecting: connecting[n],
                exact: false,
            };
            let exact = row.betti_intersection == row.rank_i + connecting[n + 1]
                && row.betti_u + row.betti_v == row.rank_i + row.rank_j
                && (n > 0 || connecting[0] == 0);
            MayerVietorisRow { exact, ..row }
        })
        .collect())
}

/// Edge-path data of a subcomplex: a breadth-first spanning tree of one component,
/// generators for the non-tree edges and relators from the 2-cells.
struct EdgePaths<'a> {
    x: &'a SimplicialSet,
    root: CellId,
    /// vertex -> (tree edge, forward?, parent vertex)
    parent: HashMap<CellId, Option<(CellId, bool, CellId)>>,
    generator: BTreeMap<CellId, usize>,
    relators: Vec<Vec<Letter>>,
}

fn endpoints(x: &SimplicialSet, e: CellId) -> (CellId, CellId) {
    let (s, t) = Monotone::edge_endpoints();
    let e = Simplex::nondegenerate(e);
    (x.face(&e, s).cell, x.face(&e, t).cell)
}

impl<'a> EdgePaths<'a> {
    fn new(x: &'a SimplicialSet, cells: &BTreeSet<CellId>, root: CellId, offset: usize) -> Self {
        let mut adjacency: BTreeMap<CellId, Vec<(CellId, bool, CellId)>> = BTreeMap::new();
        for &e in cells.iter().filter(|c| c.dim == 1) {
            let (a, b) = endpoints(x, e);
            adjacency.entry(a).or_default().push((e, true, b));
            adjacency.entry(b).or_default().push((e, false, a));
        }
        let mut parent = HashMap::from([(root, None)]);
        let mut queue = VecDeque::from([root]);
        let mut tree = BTreeSet::new();
        while let Some(v) = queue.pop_front() {
            for &(e, forward, w) in adjacency.get(&v).map_or(&[][..], |a| a) {
                if !parent.contains_key(&w) {
                    parent.insert(w, Some((e, forward, v)));
                    tree.insert(e);
                    queue.push_back(w);
                }
            }
        }
        let generator: BTreeMap<CellId, usize> = cells
            .iter()
            .filter(|c| c.dim == 1 && !tree.contains(c) && parent.contains_key(&endpoints(x, **c).0))
            .enumerate()
            .map(|(k, &e)| (e, offset + k))
            .collect();
        let relators = cells
            .iter()
            .filter(|c| c.dim == 2)
            .filter(|c| parent.contains_key(&x.act(&Simplex::nondegenerate(**c), &Monotone::all(0, 2)[0]).cell))
            .map(|&c| {
                let s = Simplex::nondegenerate(c);
                Monotone::square_loop()
                    .into_iter()
                    .filter_map(|(slot, forward)| {
                        let f = x.face(&s, slot);
                        f.is_nondegenerate().then_some(())?;
                        generator.get(&f.cell).map(|&g| (g, if forward { 1 } else { -1 }))
                    })
                    .collect()
            })
            .collect();
        EdgePaths {
            x,
            root,
            parent,
            generator,
            relators,
        }
    }

    fn vertices(&self) -> BTreeSet<CellId> {
        self.parent.keys().copied().collect()
    }

    /// Tree path from the root to `v`, as (edge, traversed forward?).
    fn path_to(&self, mut v: CellId) -> Option<Vec<(CellId, bool)>> {
        let mut out = Vec::new();
        while v != self.root {
            let (e, forward, prev) = (*self.parent.get(&v)?)?;
            out.push((e, forward));
            v = prev;
        }
        out.reverse();
        Some(out)
    }

    fn word(&self, path: &[(CellId, bool)]) -> Vec<Letter> {
        path.iter()
            .filter_map(|&(e, forward)| self.generator.get(&e).map(|&g| (g, if forward { 1 } else { -1 })))
            .collect()
    }

    /// The loop at the root through a non-tree edge.
    fn loop_through(&self, e: CellId) -> Vec<(CellId, bool)> {
        let (a, b) = endpoints(self.x, e);
        let mut p = self.path_to(a).expect("edge in the component");
        p.push((e, true));
        p.extend(reverse(&self.path_to(b).expect("edge in the component")));
        p
    }

    fn names(&self, prefix: &str) -> Vec<String> {
        self.generator.keys().map(|&e| format!("{prefix}{}", self.x.id(e))).collect()
    }
}

fn reverse(path: &[(CellId, bool)]) -> Vec<(CellId, bool)> {
    path.iter().rev().map(|&(e, f)| (e, !f)).collect()
}

fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Mayer–Vietoris exactness in degrees `<= d` and the amalgamated fundamental group for a cover
/// of `x` by the face closures `U` and `V` of the given cells.
pub fn van_kampen_check(x: &SimplicialSet, u: &[CellId], v: &[CellId], d: usize, basepoint: Option<&str>) -> Result<VanKampenReport> {
    let (uc, vc) = (closure(x, u), closure(x, v));
    if let Some(c) = x.all_cell_ids().find(|c| !uc.contains(c) && !vc.contains(c)) {
        return Err(Error::invalid(format!("uncovered cell: {}", x.id(c))));
    }
    let wc: BTreeSet<CellId> = uc.intersection(&vc).copied().collect();
    let least = |set: &BTreeSet<CellId>| set.iter().filter(|c| c.dim == 0).min_by_key(|c| x.id(**c)).copied();
    let base = match basepoint {
        Some(b) => x
            .find(b)
            .filter(|c| wc.contains(c) && c.dim == 0)
            .ok_or_else(|| Error::invalid(format!("basepoint {b} is not a vertex of the intersection")))?,
        None => least(&wc).ok_or_else(|| Error::invalid("the intersection has no vertex"))?,
    };
    let mayer_vietoris = mayer_vietoris(x, &uc, &vc, &wc, d)?;
    let mayer_vietoris_holds = mayer_vietoris.iter().all(|r| r.exact);

    let pu = EdgePaths::new(x, &uc, base, 0);
    let pv = EdgePaths::new(x, &vc, base, pu.generator.len());
    for (name, p, cells) in [("U", &pu, &uc), ("V", &pv, &vc)] {
        if cells.iter().any(|c| c.dim == 0 && !p.parent.contains_key(c)) {
            return Err(Error::invalid(format!("{name} is not connected")));
        }
    }
    let mut generators = pu.names("U:");
    generators.extend(pv.names("V:"));
    let mut relators: Vec<Vec<Letter>> = pu.relators.clone();
    relators.extend(pv.relators.iter().cloned());
    // components of the intersection, the basepoint's first
    let mut components = vec![EdgePaths::new(x, &wc, base, 0)];
    let mut seen = components[0].vertices();
    while let Some(r) = least(&wc.iter().filter(|c| !seen.contains(c)).copied().collect()) {
        let p = EdgePaths::new(x, &wc, r, 0);
        seen.extend(p.vertices());
        components.push(p);
    }
    for (k, w) in components.iter().enumerate() {
        let (gu, gv) = if k == 0 {
            (Vec::new(), Vec::new())
        } else {
            (pu.path_to(w.root).expect("U connected"), pv.path_to(w.root).expect("V connected"))
        };
        let t = generators.len();
        if k > 0 {
            generators.push(format!("t{k}"));
        }
        for &e in w.generator.keys() {
            let l = w.loop_through(e);
            let conj = |g: &[(CellId, bool)]| {
                let mut p = g.to_vec();
                p.extend(l.iter().copied());
                p.extend(reverse(g));
                p
            };
            let mut rel = pu.word(&conj(&gu));
            if k > 0 {
                rel.push((t, 1));
            }
            rel.extend(invert(&pv.word(&conj(&gv))));
            if k > 0 {
                rel.push((t, -1));
            }
            relators.push(rel);
        }
    }
    let base_id = x.id(base).to_string();
    let mut amalgamated = GroupPresentation {
        generators,
        relators,
        basepoint: base_id.clone(),
        simplified: false,
        moves: 0,
    };
    amalgamated.simplify(DEFAULT_TIETZE_BUDGET);
    let ambient = pi1_presentation(x, &base_id, DEFAULT_TIETZE_BUDGET)?;
    let abelianizations_agree = amalgamated.abelianization() == ambient.abelianization();
    Ok(VanKampenReport {
        degree_bound: d,
        mayer_vietoris,
        mayer_vietoris_holds,
        basepoint: base_id,
        intersection_basepoints: components.iter().map(|c| x.id(c.root).to_string()).collect(),
        amalgamated,
        ambient,
        abelianizations_agree,
    })
}
