use std::fmt;
use std::sync::Arc;

use super::{classifying_complex, shape_invariants};
use crate::catcore::{catalog, subobject_classifier, FiniteCategory, PresheafMorphism, SetPresheaf};
use crate::complex::{Complex, Operator, Simplex};
use crate::error::{Budget, Error, Result};
use crate::invariants::{contractibility_probe, ContractibilityReport};
use crate::par;

/// A presheaf with two global points `1 -> I`, given as one element per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalData {
    pub presheaf: SetPresheaf,
    pub zero: Vec<usize>,
    pub one: Vec<usize>,
}

impl IntervalData {
    /// Both points must be natural.
    pub fn new(presheaf: SetPresheaf, zero: Vec<usize>, one: Vec<usize>) -> Result<Self> {
        let terminal = SetPresheaf::terminal(presheaf.base.clone());
        for (name, p) in [("first", &zero), ("second", &one)] {
            PresheafMorphism::point(p.clone())
                .validate(&terminal, &presheaf)
                .into_result(&format!("{name} interval point"))?;
        }
        Ok(IntervalData { presheaf, zero, one })
    }

    /// A complex seen on the `n`-truncated shape category, pointed by two of its vertices.
    pub fn from_vertices<O: Operator>(x: &Complex<O>, base: Arc<FiniteCategory>, n: usize, zero: &str, one: &str) -> Result<Self> {
        let presheaf = catalog::complex_as_presheaf(x, base.clone(), n)?;
        let point = |v: &str| -> Result<Vec<usize>> {
            let cell = x.find(v).filter(|c| c.dim == 0).ok_or_else(|| Error::malformed(format!("no vertex {v}")))?;
            let mut family = vec![0; base.object_count()];
            for k in 0..=n {
                let a = base.object(&O::object_id(k)).expect("truncated shape category");
                let s: Simplex<O> = x.simplices(k).into_iter().find(|s| s.cell == cell).expect("degenerate vertex");
                family[a] = presheaf.element(a, &x.label(&s)).expect("listed element");
            }
            Ok(family)
        };
        IntervalData::new(presheaf.clone(), point(zero)?, point(one)?)
    }

    /// The two points have disjoint images, so their pullback is empty.
    pub fn separating(&self) -> bool {
        self.zero.iter().zip(&self.one).all(|(a, b)| a != b)
    }
}

#[derive(Clone, Debug)]
pub enum ProbeMode {
    /// local asphericity of the subobject classifier
    Omega { size_budget: usize },
    /// local asphericity of an interval, plus the separating condition
    Interval(IntervalData),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestCategoryReport {
    /// the caller's name for the (truncated) category probed
    pub truncation: String,
    pub degree_bound: usize,
    /// `None` in omega mode
    pub separating: Option<bool>,
    /// one probe of `y(a) × P` per object `a`, `P` the probed presheaf
    pub per_object: Vec<(String, ContractibilityReport)>,
    pub passes: bool,
}

/// Bounded evidence for the test-category criteria: each `y(a) × P` must show no obstruction to
/// contractibility up to degree `d`, and an interval must also be separating.
pub fn test_category_probe(a: Arc<FiniteCategory>, truncation: &str, d: usize, mode: &ProbeMode, budget: &Budget) -> Result<TestCategoryReport> {
    let (probed, separating) = match mode {
        ProbeMode::Omega { size_budget } => (subobject_classifier(a.clone(), *size_budget)?, None),
        ProbeMode::Interval(i) => {
            if i.presheaf.base != a {
                return Err(Error::invalid("interval lives over a different category"));
            }
            (i.presheaf.clone(), Some(i.separating()))
        }
    };
    let objects: Vec<usize> = (0..a.object_count()).collect();
    let per_object = par::try_map(&objects, |&c| {
        let yc = SetPresheaf::representable(a.clone(), c).product(&probed)?;
        Ok::<_, Error>((a.objects()[c].clone(), shape_invariants(&yc, d, budget)?.contractibility))
    })?;
    let passes = separating != Some(false) && per_object.iter().all(|(_, r)| r.verdict.passes());
    Ok(TestCategoryReport {
        truncation: truncation.to_string(),
        degree_bound: d,
        separating,
        per_object,
        passes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiftedReport {
    pub degree_bound: usize,
    pub nerve: ContractibilityReport,
    /// one probe of the elements of `y(a) × y(a')` per ordered pair
    pub pairs: Vec<(String, String, ContractibilityReport)>,
    pub passes: bool,
}

/// The nerve of `a` and every slice over a product of representables should look contractible.
pub fn sifted_probe(a: Arc<FiniteCategory>, d: usize, budget: &Budget) -> Result<SiftedReport> {
    let nerve = contractibility_probe(&classifying_complex(&a, d + 1, budget)?.complex, d)?;
    let pairs: Vec<(usize, usize)> = (0..a.object_count())
        .flat_map(|x| (0..a.object_count()).map(move |y| (x, y)))
        .collect();
    let pairs = par::try_map(&pairs, |&(x, y)| {
        let p = SetPresheaf::representable(a.clone(), x).product(&SetPresheaf::representable(a.clone(), y))?;
        Ok::<_, Error>((a.objects()[x].clone(), a.objects()[y].clone(), shape_invariants(&p, d, budget)?.contractibility))
    })?;
    let passes = nerve.verdict.passes() && pairs.iter().all(|p| p.2.verdict.passes());
    Ok(SiftedReport {
        degree_bound: d,
        nerve,
        pairs,
        passes,
    })
}

fn verdict_word(passes: bool, d: usize) -> String {
    if passes {
        format!("no-obstruction-up-to-{d}")
    } else {
        "obstructed".to_string()
    }
}

impl fmt::Display for TestCategoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "truncation {}", self.truncation)?;
        writeln!(f, "degree-bound {}", self.degree_bound)?;
        if let Some(s) = self.separating {
            writeln!(f, "separating {s}")?;
        }
        for (a, r) in &self.per_object {
            writeln!(f, "object {a} {} [{}]", r.verdict, r.homology)?;
        }
        writeln!(f, "verdict {}", verdict_word(self.passes, self.degree_bound))
    }
}

impl fmt::Display for SiftedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree-bound {}", self.degree_bound)?;
        writeln!(f, "nerve {}", self.nerve.verdict)?;
        for (a, b, r) in &self.pairs {
            writeln!(f, "pair {a} {b} {}", r.verdict)?;
        }
        writeln!(f, "verdict {}", verdict_word(self.passes, self.degree_bound))
    }
}
