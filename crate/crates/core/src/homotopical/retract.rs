use crate::complex::{Complex, ComplexMap, MapSearch, Operator};
use crate::error::{Budget, Result};

/// `f: A -> B` as a retract of `g: A' -> B'`:
/// ```text
///   A --s_a--> A' --r_a--> A
///   |f         |g          |f
///   B --s_b--> B' --r_b--> B
/// ```
/// with both rows composing to identities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractDiagram<O> {
    pub s_a: ComplexMap<O>,
    pub r_a: ComplexMap<O>,
    pub s_b: ComplexMap<O>,
    pub r_b: ComplexMap<O>,
}

impl<O: Operator> RetractDiagram<O> {
    /// All four commuting conditions, plus validity of each map.
    pub fn verify(
        &self,
        (a, b, f): (&Complex<O>, &Complex<O>, &ComplexMap<O>),
        (a2, b2, g): (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    ) -> bool {
        self.s_a.validate(a, a2).is_empty()
            && self.r_a.validate(a2, a).is_empty()
            && self.s_b.validate(b, b2).is_empty()
            && self.r_b.validate(b2, b).is_empty()
            && self.s_a.then(&self.r_a) == ComplexMap::identity(a)
            && self.s_b.then(&self.r_b) == ComplexMap::identity(b)
            && self.s_a.then(g) == f.then(&self.s_b)
            && self.r_a.then(f) == g.then(&self.r_b)
    }
}

/// First retract diagram exhibiting `f` as a retract of `g`, searching `s_b`, `r_b`, `s_a`, `r_a`
/// in that order, each in lexicographic map order.
pub fn retract_search<O: Operator>(
    left: (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    right: (&Complex<O>, &Complex<O>, &ComplexMap<O>),
    budget: &Budget,
) -> Result<Option<RetractDiagram<O>>> {
    let (a, b, f) = left;
    let (a2, b2, g) = right;
    let id_a = ComplexMap::identity(a);
    let id_b = ComplexMap::identity(b);
    for s_b in MapSearch::new(b, b2).run(None, budget)? {
        for r_b in MapSearch::new(b2, b).run(None, budget)? {
            if s_b.then(&r_b) != id_b {
                continue;
            }
            let fs = f.then(&s_b);
            for s_a in MapSearch::new(a, a2).over(g, &fs).run(None, budget)? {
                let gr = g.then(&r_b);
                let candidates = MapSearch::new(a2, a).over(f, &gr).run(None, budget)?;
                if let Some(r_a) = candidates.into_iter().find(|r_a| s_a.then(r_a) == id_a) {
                    let d = RetractDiagram { s_a, r_a, s_b, r_b };
                    debug_assert!(d.verify(left, right));
                    return Ok(Some(d));
                }
            }
        }
    }
    Ok(None)
}
