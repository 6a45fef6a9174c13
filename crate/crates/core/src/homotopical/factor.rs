use std::fmt;

use super::lifting::{find_lift, squares, LiftingProblem, Square};
use crate::complex::{colimit, Complex, ComplexMap, Operator};
use crate::error::{Budget, Error, Result};
use crate::par;

/// A generating inclusion `i: A -> B`.
#[derive(Clone, Debug)]
pub struct GeneratingMap<O> {
    pub name: String,
    pub a: Complex<O>,
    pub b: Complex<O>,
    pub i: ComplexMap<O>,
}

impl<O: Operator> GeneratingMap<O> {
    /// Requires a valid levelwise injection.
    pub fn new(name: impl Into<String>, a: Complex<O>, b: Complex<O>, i: ComplexMap<O>) -> Result<Self> {
        let name = name.into();
        i.validate(&a, &b).into_result(&format!("generator {name}"))?;
        if !i.is_mono() {
            return Err(Error::invalid(format!("generator {name} is not a levelwise injection")));
        }
        Ok(GeneratingMap { name, a, b, i })
    }

    /// The inclusion of a subcomplex, matched by cell ids.
    pub fn inclusion(name: impl Into<String>, a: Complex<O>, b: Complex<O>) -> Result<Self> {
        let i = a.inclusion_into(&b)?;
        GeneratingMap::new(name, a, b, i)
    }
}

/// One cell attachment: a pushout of generator `generator` along `attaching: A -> Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment<O> {
    pub round: usize,
    pub generator: usize,
    pub attaching: ComplexMap<O>,
    /// ids of the cells this attachment added to the middle complex
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualSquare<O> {
    pub generator: usize,
    pub square: Square<O>,
}

/// `f = right ∘ left` with `left` a finite relative cell complex.
#[derive(Clone, Debug)]
pub struct FactorizationResult<O> {
    pub middle: Complex<O>,
    pub left: ComplexMap<O>,
    pub right: ComplexMap<O>,
    pub history: Vec<Attachment<O>>,
    /// squares still without a lift when the round budget ran out
    pub residual: Vec<ResidualSquare<O>>,
    pub rounds: usize,
}

impl<O: Operator> FactorizationResult<O> {
    pub fn is_complete(&self) -> bool {
        self.residual.is_empty()
    }
}

fn unresolved<O: Operator>(
    z: &Complex<O>,
    y: &Complex<O>,
    right: &ComplexMap<O>,
    generators: &[GeneratingMap<O>],
    budget: &Budget,
) -> Result<Vec<ResidualSquare<O>>> {
    let mut out = Vec::new();
    for (k, g) in generators.iter().enumerate() {
        let left = (&g.a, &g.b, &g.i);
        let all = squares(left, (z, y, right), budget)?;
        let lifts = par::try_map(&all, |sq| {
            let p = LiftingProblem::new(left, (z, y, right), &sq.f, &sq.g)?;
            find_lift(&p, budget).map(|l| l.is_some())
        })?;
        out.extend(
            all.into_iter()
                .zip(lifts)
                .filter(|(_, ok)| !ok)
                .map(|(square, _)| ResidualSquare { generator: k, square }),
        );
    }
    Ok(out)
}

struct Round<O> {
    middle: Complex<O>,
    leg: ComplexMap<O>,
    colimit: crate::complex::Colimit<O>,
    cells: Vec<Vec<String>>,
}

/// Pushes out every `(generator, attaching map)` at once. Cells of `z` keep their ids; new ones
/// are named `r<round>n<k>:<id>`.
fn attach_round<O: Operator>(
    z: &Complex<O>,
    generators: &[GeneratingMap<O>],
    round: usize,
    attachments: &[(usize, &ComplexMap<O>)],
    budget: &Budget,
) -> Result<Round<O>> {
    let mut objects: Vec<(String, &Complex<O>)> = vec![("z".into(), z)];
    for (k, &(g, _)) in attachments.iter().enumerate() {
        objects.push((format!("r{round}n{k}"), &generators[g].b));
    }
    for (k, &(g, _)) in attachments.iter().enumerate() {
        objects.push((format!("r{round}a{k}"), &generators[g].a));
    }
    let n = attachments.len();
    let mut arrows = Vec::new();
    for (k, &(g, f)) in attachments.iter().enumerate() {
        arrows.push((1 + n + k, 0, f));
        arrows.push((1 + n + k, 1 + k, &generators[g].i));
    }
    let colim = colimit(&objects, &arrows, budget)?;
    let middle = colim
        .complex
        .renamed(|_, id| id.strip_prefix("z:").map_or_else(|| id.to_string(), str::to_string))?;
    let mut cells = vec![Vec::new(); n];
    for c in middle.all_cell_ids() {
        let id = middle.id(c);
        if let Some(rest) = id.strip_prefix(&format!("r{round}n")) {
            let k: usize = rest.split(':').next().and_then(|s| s.parse().ok()).expect("attachment index");
            cells[k].push(id.to_string());
        }
    }
    Ok(Round {
        middle,
        leg: colim.legs[0].clone(),
        colimit: colim,
        cells,
    })
}

/// The bounded small object argument: each round attaches one cell for every lifting square of
/// a generator against the current `Z -> Y` that has no lift. Stops when none remain or after
/// `rounds` rounds; whatever is left is returned as the residual.
pub fn factor_bounded<O: Operator>(
    f: &ComplexMap<O>,
    x: &Complex<O>,
    y: &Complex<O>,
    generators: &[GeneratingMap<O>],
    rounds: usize,
    budget: &Budget,
) -> Result<FactorizationResult<O>> {
    f.validate(x, y).into_result("map to factor")?;
    let mut z = x.clone();
    let mut left = ComplexMap::identity(x);
    let mut right = f.clone();
    let mut history = Vec::new();
    let mut done = 0;
    let mut residual = unresolved(&z, y, &right, generators, budget)?;
    while !residual.is_empty() && done < rounds {
        done += 1;
        let pending: Vec<(usize, &ComplexMap<O>)> = residual.iter().map(|r| (r.generator, &r.square.f)).collect();
        let round = attach_round(&z, generators, done, &pending, budget)?;
        let mut objects: Vec<&Complex<O>> = vec![&z];
        let mut maps: Vec<ComplexMap<O>> = vec![right.clone()];
        for r in &residual {
            objects.push(&generators[r.generator].b);
            maps.push(r.square.g.clone());
        }
        for r in &residual {
            objects.push(&generators[r.generator].a);
            maps.push(r.square.f.then(&right));
        }
        let map_refs: Vec<&ComplexMap<O>> = maps.iter().collect();
        let new_right = round.colimit.induced(&objects, &map_refs, y)?;
        for (r, cells) in residual.iter().zip(round.cells) {
            history.push(Attachment {
                round: done,
                generator: r.generator,
                attaching: r.square.f.clone(),
                cells,
            });
        }
        left = left.then(&round.leg);
        right = new_right;
        z = round.middle;
        residual = unresolved(&z, y, &right, generators, budget)?;
    }
    Ok(FactorizationResult {
        middle: z,
        left,
        right,
        history,
        residual,
        rounds: done,
    })
}

/// Rebuilds the middle complex from `x` and an attachment history.
pub fn replay<O: Operator>(x: &Complex<O>, generators: &[GeneratingMap<O>], history: &[Attachment<O>], budget: &Budget) -> Result<Complex<O>> {
    let mut z = x.clone();
    let last = history.iter().map(|a| a.round).max().unwrap_or(0);
    for round in 1..=last {
        let batch: Vec<(usize, &ComplexMap<O>)> =
            history.iter().filter(|a| a.round == round).map(|a| (a.generator, &a.attaching)).collect();
        for &(g, f) in &batch {
            let gen = generators.get(g).ok_or_else(|| Error::invalid(format!("history names generator {g}")))?;
            f.validate(&gen.a, &z).into_result("attaching map")?;
        }
        z = attach_round(&z, generators, round, &batch, budget)?.middle;
    }
    Ok(z)
}

impl<O: Operator> fmt::Display for FactorizationResult<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<String> = self.middle.counts().iter().map(|c| c.to_string()).collect();
        writeln!(f, "rounds {}", self.rounds)?;
        writeln!(f, "middle-counts {}", counts.join(" "))?;
        for a in &self.history {
            writeln!(f, "attach round {} generator {} cells {}", a.round, a.generator, a.cells.join(" "))?;
        }
        writeln!(f, "residual {}", self.residual.len())?;
        writeln!(f, "complete {}", self.is_complete())
    }
}
