//! Kan's Ex: an `n`-simplex of `Ex X` is a map `Sd Δⁿ -> X`.

use super::generators::simplex;
use super::sd::Subdivision;
use super::{Monotone, SimplicialSet};
use crate::complex::{enumerate_maps, realize, CellSource, ComplexMap, MapSearch, Operator, Realized, Simplex};
use crate::error::{Budget, Error, Result};

/// The map `Δ^m -> Δ^n` induced by a monotone `θ: [m] -> [n]`.
pub fn simplex_map(theta: &Monotone) -> ComplexMap<Monotone> {
    let (m, n) = (theta.source(), theta.target());
    let src = simplex(m);
    let dst = simplex(n);
    let top = Simplex::nondegenerate(dst.cell_ids(n).next().expect("top cell"));
    let rows = (0..=m)
        .map(|k| {
            src.cell_ids(k)
                .map(|c| {
                    let verts: Vec<usize> = src.id(c).chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect();
                    let incl = Monotone::inclusion(m, &verts).unwrap();
                    dst.act(&top, &theta.after(&incl))
                })
                .collect()
        })
        .collect();
    ComplexMap::new(rows)
}

/// The characteristic map `Δⁿ -> X` of an `n`-simplex.
pub fn characteristic(x: &SimplicialSet, s: &Simplex<Monotone>) -> ComplexMap<Monotone> {
    let n = s.dim();
    let src = simplex(n);
    let rows = (0..=n)
        .map(|k| {
            src.cell_ids(k)
                .map(|c| {
                    let verts: Vec<usize> = src.id(c).chars().map(|ch| ch.to_digit(10).unwrap() as usize).collect();
                    x.act(s, &Monotone::inclusion(n, &verts).unwrap())
                })
                .collect()
        })
        .collect();
    ComplexMap::new(rows)
}

/// Subdivided standard simplices and the subdivided structure maps between them.
struct SdSimplices {
    subdivisions: Vec<Subdivision>,
    /// `faces[n][i] = Sd(δ_i) : Sd Δ^{n-1} -> Sd Δⁿ`
    faces: Vec<Vec<ComplexMap<Monotone>>>,
    /// `degeneracies[n][j] = Sd(σ_j) : Sd Δ^{n+1} -> Sd Δⁿ`
    degeneracies: Vec<Vec<ComplexMap<Monotone>>>,
}

impl SdSimplices {
    fn new(dmax: usize) -> Result<Self> {
        let subdivisions = (0..=dmax + 1).map(|n| Subdivision::new(&simplex(n))).collect::<Result<Vec<_>>>()?;
        let mut faces = vec![Vec::new()];
        for n in 1..=dmax {
            faces.push(
                (0..=n)
                    .map(|i| subdivisions[n - 1].map(&simplex_map(&Monotone::face(n, i)), &subdivisions[n]))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        let mut degeneracies = Vec::new();
        for n in 0..dmax {
            degeneracies.push(
                Monotone::elementary_degeneracies(n)
                    .iter()
                    .map(|s| subdivisions[n + 1].map(&simplex_map(s), &subdivisions[n]))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(SdSimplices {
            subdivisions,
            faces,
            degeneracies,
        })
    }
}

struct ExSource<'a> {
    base: &'a SimplicialSet,
    sds: SdSimplices,
    budget: &'a Budget,
}

impl CellSource<Monotone> for ExSource<'_> {
    type Item = ComplexMap<Monotone>;

    fn candidates(&self, n: usize) -> Result<Vec<Self::Item>> {
        enumerate_maps(self.sds.subdivisions[n].complex(), self.base, self.budget)
    }

    fn face(&self, x: &Self::Item, n: usize, slot: usize) -> Self::Item {
        self.sds.faces[n][slot].then(x)
    }

    fn degeneracy(&self, x: &Self::Item, n: usize, j: usize) -> Self::Item {
        self.sds.degeneracies[n][j].then(x)
    }

    fn label(&self, x: &Self::Item) -> String {
        let parts: Vec<String> = x.images().iter().flatten().map(|s| self.base.label(s)).collect();
        format!("ex({})", parts.join(","))
    }
}

/// `Ex X` up to dimension `dmax`, with the natural comparison `X -> Ex X`.
pub struct Ex<'a> {
    source: ExSource<'a>,
    realized: Realized<Monotone, ComplexMap<Monotone>>,
}

impl<'a> Ex<'a> {
    pub fn new(x: &'a SimplicialSet, dmax: usize, budget: &'a Budget) -> Result<Self> {
        let source = ExSource {
            base: x,
            sds: SdSimplices::new(dmax)?,
            budget,
        };
        let realized = realize(&source, dmax, budget)?;
        Ok(Ex { source, realized })
    }

    pub fn complex(&self) -> &SimplicialSet {
        &self.realized.complex
    }

    /// Locates a map `Sd Δⁿ -> X` among the simplices of `Ex X`.
    pub fn simplex_of(&self, f: &ComplexMap<Monotone>, n: usize) -> Result<Simplex<Monotone>> {
        self.realized.normalize(&self.source, f, n)
    }

    /// `X -> Ex X`, sending an `n`-simplex to its characteristic map precomposed with the last-vertex map.
    pub fn comparison(&self) -> Result<ComplexMap<Monotone>> {
        let x = self.source.base;
        let top = x.dim().map_or(0, |d| d + 1);
        let mut rows = Vec::new();
        for n in 0..top {
            if n >= self.source.sds.subdivisions.len() - 1 {
                return Err(Error::invalid(format!("comparison needs Ex up to dimension {n}")));
            }
            let lv = self.source.sds.subdivisions[n].last_vertex();
            let mut row = Vec::new();
            for c in x.cell_ids(n) {
                let f = lv.then(&characteristic(x, &Simplex::nondegenerate(c)));
                row.push(self.simplex_of(&f, n)?);
            }
            rows.push(row);
        }
        Ok(ComplexMap::new(rows))
    }
}

pub fn ex(x: &SimplicialSet, dmax: usize, budget: &Budget) -> Result<SimplicialSet> {
    Ok(Ex::new(x, dmax, budget)?.realized.complex)
}

/// Outcome of a horn-filling search.
#[derive(Clone, Debug)]
pub enum HornFill {
    /// At iterate `r` the filler is a map `Sd^r Δⁿ -> X`, i.e. an `n`-simplex of `Ex^r X`
    /// whose horn faces are the image of the given horn under `X -> Ex^r X`.
    Filled {
        iterate: usize,
        domain: SimplicialSet,
        filler: ComplexMap<Monotone>,
    },
    /// No filler at any iterate up to the bound; whether one exists further out is unknown.
    UnknownAtBudget { iterates: usize },
}

impl HornFill {
    pub fn iterate(&self) -> Option<usize> {
        match self {
            HornFill::Filled { iterate, .. } => Some(*iterate),
            HornFill::UnknownAtBudget { .. } => None,
        }
    }
}

/// Searches for an extension of `h: Λⁿ_k -> X` to Δⁿ, first in X, then in Ex X, Ex² X, ...
pub fn fill_horn(
    x: &SimplicialSet,
    n: usize,
    k: usize,
    h: &ComplexMap<Monotone>,
    max_iterate: usize,
    budget: &Budget,
) -> Result<HornFill> {
    let horn = super::generators::horn(n, k)?;
    let full = simplex(n);
    h.validate(&horn, x).into_result("horn map")?;
    let mut sd_horn = Subdivision::new(&horn)?;
    let mut sd_full = Subdivision::new(&full)?;
    // inclusion Sd^r Λ -> Sd^r Δⁿ and the iterated last-vertex map Sd^r Λ -> Λ
    let mut incl = horn.inclusion_into(&full)?;
    let mut to_horn = ComplexMap::identity(&horn);
    let (mut dom_horn, mut dom_full) = (horn.clone(), full.clone());
    for r in 0..=max_iterate {
        if r > 0 {
            let next_incl = sd_horn.map(&incl, &sd_full)?;
            to_horn = sd_horn.last_vertex().then(&to_horn);
            incl = next_incl;
            dom_horn = sd_horn.complex().clone();
            dom_full = sd_full.complex().clone();
            if r < max_iterate {
                sd_horn = Subdivision::new(&dom_horn)?;
                sd_full = Subdivision::new(&dom_full)?;
            }
        }
        let constraint = to_horn.then(h);
        let mut search = MapSearch::new(&dom_full, x);
        for c in dom_horn.all_cell_ids() {
            search = search.fix(incl.image(c).cell, constraint.image(c).clone());
        }
        if let Some(filler) = search.first(budget)? {
            return Ok(HornFill::Filled {
                iterate: r,
                domain: dom_full,
                filler,
            });
        }
    }
    Ok(HornFill::UnknownAtBudget {
        iterates: max_iterate,
    })
}
