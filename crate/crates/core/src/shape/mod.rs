//! Shapes of finite presheaves through the nerve of the category of elements, together with
//! bounded test-category, siftedness and cofinality probes.
//!
//! Every comparison here is made at the level of integral homology up to a degree bound and
//! the abelianized fundamental group; nothing certifies a weak equivalence.

mod compare;
mod probes;
pub mod reduce;

use std::fmt;

use crate::catcore::{elements, nerve, FiniteCategory, SetPresheaf};
use crate::error::{Budget, Result};
use crate::invariants::{contractibility_probe, pi1_presentation, ContractibilityReport, GroupPresentation, HomologyReport, DEFAULT_TIETZE_BUDGET};
use crate::simplicial::SimplicialSet;

pub use compare::{nerve_comparison, Certificates, CertificateStatus, ComparisonOutcome, ComparisonReport};
pub use probes::{sifted_probe, test_category_probe, IntervalData, ProbeMode, SiftedReport, TestCategoryReport};

/// How the classifying complex of a category was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyingComplex {
    pub complex: SimplicialSet,
    /// objects actually used: all of them, or a reflective subcategory
    pub objects: usize,
    pub reduced: bool,
}

/// Nerve of `c` up to dimension `dmax`, taken over a reflective subcategory when one is
/// certified (same homotopy type, far fewer simplices).
pub fn classifying_complex(c: &FiniteCategory, dmax: usize, budget: &Budget) -> Result<ClassifyingComplex> {
    match reduce::reflect(c)? {
        Some(r) => Ok(ClassifyingComplex {
            complex: nerve(&r.subcategory, dmax, budget)?,
            objects: r.kept.len(),
            reduced: true,
        }),
        None => Ok(ClassifyingComplex {
            complex: nerve(c, dmax, budget)?,
            objects: c.object_count(),
            reduced: false,
        }),
    }
}

/// Invariants of the shape of a presheaf, up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeReport {
    /// caller-supplied names of the base category and the presheaf
    pub base: String,
    pub presheaf: String,
    pub degree_bound: usize,
    pub elements_objects: usize,
    pub elements_morphisms: usize,
    /// objects of the category whose nerve was taken
    pub nerve_objects: usize,
    pub reduced: bool,
    pub basepoint: Option<String>,
    pub homology: HomologyReport,
    /// at the basepoint; `None` for the empty presheaf
    pub pi1: Option<GroupPresentation>,
    pub contractibility: ContractibilityReport,
}

impl ShapeReport {
    pub fn named(mut self, base: impl Into<String>, presheaf: impl Into<String>) -> Self {
        self.base = base.into();
        self.presheaf = presheaf.into();
        self
    }

    /// H₁ agrees with the abelianized π₁ when the shape is connected.
    pub fn is_consistent(&self) -> bool {
        match &self.pi1 {
            Some(p) if self.contractibility.connected && self.degree_bound >= 1 => p.abelianization() == self.homology.groups[1],
            _ => true,
        }
    }
}

/// Shape invariants of `x`: homology to degree `d` and π₁ of the nerve of its category of
/// elements (nerve built to `d + 1`). The basepoint is the least vertex id, so π₁ is taken
/// in the component of the least object.
pub fn shape_invariants(x: &SetPresheaf, d: usize, budget: &Budget) -> Result<ShapeReport> {
    // the composition table of the elements dominates memory; charge it up front
    let base = &x.base;
    let composable: usize = base.morphisms().iter().map(|m| x.size(m.target) * base.incoming(m.source).len()).sum();
    budget.spend(composable)?;
    let el = elements(x)?;
    let classifying = classifying_complex(&el.category, d + 1, budget)?;
    let n = &classifying.complex;
    let contractibility = contractibility_probe(n, d)?;
    let basepoint = n.cell_ids(0).map(|v| n.id(v).to_string()).min();
    let pi1 = match &basepoint {
        Some(b) => Some(pi1_presentation(n, b, DEFAULT_TIETZE_BUDGET)?),
        None => None,
    };
    Ok(ShapeReport {
        base: String::new(),
        presheaf: String::new(),
        degree_bound: d,
        elements_objects: el.category.object_count(),
        elements_morphisms: el.category.morphism_count(),
        nerve_objects: classifying.objects,
        reduced: classifying.reduced,
        basepoint,
        homology: contractibility.homology.clone(),
        pi1,
        contractibility,
    })
}

impl fmt::Display for ShapeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base {}", self.base)?;
        writeln!(f, "presheaf {}", self.presheaf)?;
        writeln!(f, "degree-bound {}", self.degree_bound)?;
        writeln!(f, "elements {} objects {} morphisms", self.elements_objects, self.elements_morphisms)?;
        writeln!(f, "nerve-objects {}{}", self.nerve_objects, if self.reduced { " (reflective reduction)" } else { "" })?;
        writeln!(f, "homology {}", self.homology)?;
        match (&self.basepoint, &self.pi1) {
            (Some(b), Some(p)) => writeln!(f, "pi1 at {b}: {p}")?,
            _ => writeln!(f, "pi1 none (empty)")?,
        }
        writeln!(f, "contractibility {}", self.contractibility.verdict)?;
        writeln!(f, "scope homology <= {} and pi1 abelianization only", self.degree_bound)
    }
}
