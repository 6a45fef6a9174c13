use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use super::homology::AbelianGroup;
use super::snf::SparseMatrix;
use crate::complex::{CellId, Complex, Operator, Simplex};
use crate::error::{Error, Result};

/// A letter: generator index and exponent ±1.
pub type Letter = (usize, i8);

/// Generators, relators over them, and the basepoint the presentation was taken at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
    pub basepoint: String,
    /// False when the move budget ran out before simplification finished.
    pub simplified: bool,
    pub moves: usize,
}

pub const DEFAULT_TIETZE_BUDGET: usize = 1000;

fn free_reduce(word: &mut Vec<Letter>) {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.iter() {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    // cyclic reduction
    let mut start = 0;
    let mut end = out.len();
    while end - start >= 2 && out[start].0 == out[end - 1].0 && out[start].1 == -out[end - 1].1 {
        start += 1;
        end -= 1;
    }
    *word = out[start..end].to_vec();
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

impl GroupPresentation {
    pub fn is_valid(&self) -> bool {
        self.relators.iter().flatten().all(|&(g, e)| g < self.generators.len() && (e == 1 || e == -1))
    }

    /// Relator matrix: one column of exponent sums per relator.
    pub fn relation_matrix(&self) -> SparseMatrix {
        let cols = self
            .relators
            .iter()
            .map(|r| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(g, e) in r {
                    *acc.entry(g).or_default() += e as i64;
                }
                acc.into_iter().filter(|(_, v)| *v != 0).collect()
            })
            .collect();
        SparseMatrix::new(self.generators.len(), cols)
    }

    pub fn abelianization(&self) -> AbelianGroup {
        AbelianGroup::cokernel(&self.relation_matrix())
    }

    /// Removes trivial relators and eliminates generators defined by relators of length one or
    /// two, spending one move per change.
    pub fn simplify(&mut self, budget: usize) {
        loop {
            for r in self.relators.iter_mut() {
                free_reduce(r);
            }
            let before = self.relators.len();
            self.relators.retain(|r| !r.is_empty());
            let mut seen = HashSet::new();
            self.relators.retain(|r| seen.insert(r.clone()));
            self.moves += before - self.relators.len();
            // a relator x^e w with w free of x, |w| <= 1, defines x
            let found = self.relators.iter().enumerate().find_map(|(k, r)| match r.as_slice() {
                [(g, e)] => Some((k, *g, *e, Vec::new())),
                [(g, e), (h, f)] if g != h => Some((k, *g, *e, vec![(*h, *f)])),
                _ => None,
            });
            let Some((k, g, e, rest)) = found else {
                self.simplified = true;
                return;
            };
            if self.moves >= budget {
                self.simplified = false;
                return;
            }
            // g^e · rest = 1  =>  g = (rest^{-1})^{e}
            let value = if e == 1 { invert(&rest) } else { rest };
            self.relators.remove(k);
            let value_inv = invert(&value);
            for r in self.relators.iter_mut() {
                *r = r
                    .iter()
                    .flat_map(|&(x, s)| {
                        if x == g {
                            if s == 1 {
                                value.clone()
                            } else {
                                value_inv.clone()
                            }
                        } else {
                            vec![(x, s)]
                        }
                    })
                    .collect();
            }
            self.generators.remove(g);
            for r in self.relators.iter_mut() {
                for l in r.iter_mut() {
                    if l.0 > g {
                        l.0 -= 1;
                    }
                }
            }
            self.moves += 1;
        }
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |r: &Vec<Letter>| {
            r.iter()
                .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^-1", self.generators[g]) })
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "<{} | {}>",
            self.generators.join(", "),
            self.relators.iter().map(word).collect::<Vec<_>>().join(", ")
        )
    }
}

/// Vertices reachable from `start` through nondegenerate edges, and the breadth-first tree edges.
pub fn component<O: Operator>(x: &Complex<O>, start: CellId) -> (Vec<CellId>, HashSet<CellId>) {
    let (src_slot, dst_slot) = O::edge_endpoints();
    let mut adjacency: HashMap<CellId, Vec<(String, CellId, CellId)>> = HashMap::new();
    for e in x.cell_ids(1) {
        let s = Simplex::nondegenerate(e);
        let (a, b) = (x.face(&s, src_slot).cell, x.face(&s, dst_slot).cell);
        adjacency.entry(a).or_default().push((x.id(e).to_string(), e, b));
        adjacency.entry(b).or_default().push((x.id(e).to_string(), e, a));
    }
    for v in adjacency.values_mut() {
        v.sort();
    }
    let mut seen = HashSet::from([start]);
    let mut order = vec![start];
    let mut tree = HashSet::new();
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for (_, e, w) in adjacency.get(&v).map_or(&[][..], |a| a) {
            if seen.insert(*w) {
                tree.insert(*e);
                order.push(*w);
                queue.push_back(*w);
            }
        }
    }
    (order, tree)
}

/// Edge-path presentation of the fundamental group at a vertex, simplified within `budget` moves.
pub fn pi1_presentation<O: Operator>(x: &Complex<O>, basepoint: &str, budget: usize) -> Result<GroupPresentation> {
    let base = x
        .find(basepoint)
        .filter(|c| c.dim == 0)
        .ok_or_else(|| Error::invalid(format!("basepoint {basepoint} is not a vertex")))?;
    let (vertices, tree) = component(x, base);
    let in_component: HashSet<CellId> = vertices.into_iter().collect();
    let (src_slot, _) = O::edge_endpoints();
    let mut generators = Vec::new();
    let mut index = HashMap::new();
    for e in x.cell_ids(1) {
        let s = Simplex::nondegenerate(e);
        if in_component.contains(&x.face(&s, src_slot).cell) && !tree.contains(&e) {
            index.insert(e, generators.len());
            generators.push(x.id(e).to_string());
        }
    }
    let mut relators = Vec::new();
    for c in x.cell_ids(2) {
        let s = Simplex::nondegenerate(c);
        let corner = x.act(&s, &O::all(0, 2)[0]).cell;
        if !in_component.contains(&corner) {
            continue;
        }
        let word: Vec<Letter> = O::square_loop()
            .into_iter()
            .filter_map(|(slot, forward)| {
                let f = x.face(&s, slot);
                if !f.is_nondegenerate() {
                    return None;
                }
                index.get(&f.cell).map(|&g| (g, if forward { 1 } else { -1 }))
            })
            .collect();
        relators.push(word);
    }
    let mut p = GroupPresentation {
        generators,
        relators,
        basepoint: basepoint.to_string(),
        simplified: false,
        moves: 0,
    };
    p.simplify(budget);
    Ok(p)
}
