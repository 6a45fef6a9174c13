use std::collections::HashMap;

use crate::complex::{Complex, ComplexMap, MapSearch, Operator};
use crate::error::{Budget, Error, Result};
use crate::par;

/// A commutative square
/// ```text
///   A --f--> X
///   |i       |p
///   B --g--> Y
/// ```
#[derive(Clone, Copy, Debug)]
pub struct LiftingProblem<'a, O> {
    pub a: &'a Complex<O>,
    pub b: &'a Complex<O>,
    pub x: &'a Complex<O>,
    pub y: &'a Complex<O>,
    pub i: &'a ComplexMap<O>,
    pub p: &'a ComplexMap<O>,
    pub f: &'a ComplexMap<O>,
    pub g: &'a ComplexMap<O>,
}

impl<'a, O: Operator> LiftingProblem<'a, O> {
    /// Checks that all four maps are valid and the square commutes cellwise.
    pub fn new(
        (a, b, i): (&'a Complex<O>, &'a Complex<O>, &'a ComplexMap<O>),
        (x, y, p): (&'a Complex<O>, &'a Complex<O>, &'a ComplexMap<O>),
        f: &'a ComplexMap<O>,
        g: &'a ComplexMap<O>,
    ) -> Result<Self> {
        for (name, m, s, t) in [("i", i, a, b), ("p", p, x, y), ("f", f, a, x), ("g", g, b, y)] {
            m.validate(s, t).into_result(&format!("map {name}"))?;
        }
        if let Some(c) = a.all_cell_ids().find(|&c| p.apply(f.image(c)) != g.apply(i.image(c))) {
            return Err(Error::invalid(format!("square does not commute at {}", a.id(c))));
        }
        Ok(LiftingProblem { a, b, x, y, i, p, f, g })
    }

    /// Both triangles commute.
    pub fn is_lift(&self, l: &ComplexMap<O>) -> bool {
        l.validate(self.b, self.x).is_empty() && self.i.then(l) == *self.f && l.then(self.p) == *self.g
    }
}

/// First diagonal filler `B -> X` in search order, `None` when the search is exhausted.
/// Cells of `B` hit by `i` are pinned by `f`; everything is constrained to lie over `g`.
pub fn find_lift<O: Operator>(problem: &LiftingProblem<'_, O>, budget: &Budget) -> Result<Option<ComplexMap<O>>> {
    let mut pinned: HashMap<_, _> = HashMap::new();
    let mut faithful = true;
    for c in problem.a.all_cell_ids() {
        let target = problem.i.image(c);
        if !target.is_nondegenerate() {
            faithful = false;
            continue;
        }
        let want = problem.f.image(c).clone();
        match pinned.insert(target.cell, want.clone()) {
            Some(prev) if prev != want => return Ok(None),
            _ => {}
        }
    }
    let mut search = MapSearch::new(problem.b, problem.x).over(problem.p, problem.g);
    for (c, s) in pinned {
        search = search.fix(c, s);
    }
    if faithful {
        return search.first(budget);
    }
    // a leg that folds cells: pins cannot express every constraint, so filter
    Ok(search.run(None, budget)?.into_iter().find(|l| problem.is_lift(l)))
}

/// One square of a lifting test: `f: A -> X` and `g: B -> Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square<O> {
    pub f: ComplexMap<O>,
    pub g: ComplexMap<O>,
}

/// Every commuting square from `i: A -> B` to `p: X -> Y`, ordered by `g` then `f`.
pub fn squares<O: Operator>(
    (a, b, i): (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    (x, y, p): (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    budget: &Budget,
) -> Result<Vec<Square<O>>> {
    let mut out = Vec::new();
    for g in MapSearch::new(b, y).run(None, budget)? {
        let required = i.then(&g);
        for f in MapSearch::new(a, x).over(p, &required).run(None, budget)? {
            out.push(Square { f, g: g.clone() });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxslashVerdict<O> {
    pub holds: bool,
    pub squares: usize,
    /// the first square without a lift
    pub witness: Option<Square<O>>,
}

/// Whether `i` has the left lifting property against `p`, over all commuting squares.
pub fn boxslash<O: Operator>(
    left: (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    right: (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    budget: &Budget,
) -> Result<BoxslashVerdict<O>> {
    let all = squares(left, right, budget)?;
    let lifts = par::try_map(&all, |sq| {
        let problem = LiftingProblem::new(left, right, &sq.f, &sq.g)?;
        find_lift(&problem, budget).map(|l| l.is_some())
    })?;
    let witness = lifts.iter().position(|ok| !ok).map(|k| all[k].clone());
    Ok(BoxslashVerdict {
        holds: witness.is_none(),
        squares: all.len(),
        witness,
    })
}
