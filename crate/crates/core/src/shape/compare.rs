use std::fmt;

use super::{shape_invariants, IntervalData, ShapeReport};
use crate::catcore::{restrict, FunctorData, PresheafMorphism, SetPresheaf};
use crate::error::{Budget, Error, Result};
use crate::invariants::AbelianGroup;

/// Hypotheses for a cofinality conclusion: an interval `J` on the target, its restriction along
/// the functor, and for every target object `b` a homotopy `J × y(b) -> y(b)` from the identity
/// to a constant map (in either order of the two points).
#[derive(Clone, Debug)]
pub struct Certificates {
    pub interval: IntervalData,
    pub source_interval: IntervalData,
    pub contractions: Vec<PresheafMorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateStatus {
    Absent,
    Valid,
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonOutcome {
    Agree,
    Mismatch,
    /// a mismatch under validated certificates; conditional on the product-preservation hypothesis,
    /// which cannot be certified finitely
    CounterexampleWitness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonReport {
    pub source: ShapeReport,
    pub target: ShapeReport,
    pub homology_equal: bool,
    pub abelianization_equal: bool,
    pub certificates: CertificateStatus,
    pub outcome: ComparisonOutcome,
}

/// Which component value a map `y(b) -> y(b)` takes, if it is constant at a global element.
fn constant_value(m: &PresheafMorphism, yb: &SetPresheaf) -> Option<Vec<usize>> {
    let family: Vec<usize> = m
        .components
        .iter()
        .map(|row| {
            let v = *row.first()?;
            row.iter().all(|&e| e == v).then_some(v)
        })
        .collect::<Option<_>>()?;
    let terminal = SetPresheaf::terminal(yb.base.clone());
    PresheafMorphism::point(family.clone()).validate(&terminal, yb).is_empty().then_some(family)
}

/// `h ∘ (p × id)` as a map `y(b) -> y(b)`.
fn end_of(h: &PresheafMorphism, j: &SetPresheaf, point: &[usize], yb: &SetPresheaf, prod: &SetPresheaf) -> Result<PresheafMorphism> {
    let components = (0..yb.base.object_count())
        .map(|a| {
            (0..yb.size(a))
                .map(|e| {
                    let id = format!("({},{})", j.elements(a)[point[a]], yb.elements(a)[e]);
                    prod.element(a, &id)
                        .map(|k| h.components[a][k])
                        .ok_or_else(|| Error::malformed(format!("product element {id} missing")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PresheafMorphism { components })
}

fn check_certificates(u: &FunctorData, c: &Certificates) -> std::result::Result<(), String> {
    let j = &c.interval;
    if *j.presheaf.base != *u.target || *c.source_interval.presheaf.base != *u.source {
        return Err("intervals live over the wrong categories".into());
    }
    let pulled = restrict(u, &j.presheaf).map_err(|e| e.to_string())?;
    let pulled_points = |p: &[usize]| u.objects.iter().map(|&b| p[b]).collect::<Vec<_>>();
    if pulled != c.source_interval.presheaf
        || pulled_points(&j.zero) != c.source_interval.zero
        || pulled_points(&j.one) != c.source_interval.one
    {
        return Err("source interval is not the restriction of the target interval".into());
    }
    let base = &u.target;
    if c.contractions.len() != base.object_count() {
        return Err(format!("expected {} contractions, got {}", base.object_count(), c.contractions.len()));
    }
    for (b, h) in c.contractions.iter().enumerate() {
        let name = &base.objects()[b];
        let yb = SetPresheaf::representable(base.clone(), b);
        let prod = j.presheaf.product(&yb).map_err(|e| e.to_string())?;
        let report = h.validate(&prod, &yb);
        if !report.is_empty() {
            return Err(format!("contraction of {name}: {}", report));
        }
        let ends = [&j.zero, &j.one].map(|p| end_of(h, &j.presheaf, p, &yb, &prod));
        let [e0, e1] = ends;
        let (e0, e1) = (e0.map_err(|e| e.to_string())?, e1.map_err(|e| e.to_string())?);
        let id = PresheafMorphism::identity(&yb);
        let ok = (e0 == id && constant_value(&e1, &yb).is_some()) || (e1 == id && constant_value(&e0, &yb).is_some());
        if !ok {
            return Err(format!("contraction of {name} does not join the identity to a constant"));
        }
    }
    Ok(())
}

fn abelianization(r: &ShapeReport) -> Option<AbelianGroup> {
    r.pi1.as_ref().map(|p| p.abelianization())
}

/// Compares the shape of `X` with the shape of its restriction along `u`. A mismatch under valid
/// certificates contradicts the cofinality conclusion, conditionally on the unverifiable
/// product-preservation hypothesis.
pub fn nerve_comparison(
    u: &FunctorData,
    x: &SetPresheaf,
    d: usize,
    certificates: Option<&Certificates>,
    budget: &Budget,
) -> Result<ComparisonReport> {
    u.validate().into_result("functor")?;
    if *x.base != *u.target {
        return Err(Error::invalid("presheaf does not live over the functor's target"));
    }
    let source = shape_invariants(&restrict(u, x)?, d, budget)?.named("source", "restricted");
    let target = shape_invariants(x, d, budget)?.named("target", "given");
    let homology_equal = source.homology == target.homology;
    let abelianization_equal = abelianization(&source) == abelianization(&target);
    let certificates = match certificates {
        None => CertificateStatus::Absent,
        Some(c) => match check_certificates(u, c) {
            Ok(()) => CertificateStatus::Valid,
            Err(reason) => CertificateStatus::Invalid(reason),
        },
    };
    let outcome = if homology_equal && abelianization_equal {
        ComparisonOutcome::Agree
    } else if certificates == CertificateStatus::Valid {
        ComparisonOutcome::CounterexampleWitness
    } else {
        ComparisonOutcome::Mismatch
    };
    Ok(ComparisonReport {
        source,
        target,
        homology_equal,
        abelianization_equal,
        certificates,
        outcome,
    })
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree-bound {}", self.target.degree_bound)?;
        writeln!(f, "source homology {}", self.source.homology)?;
        writeln!(f, "target homology {}", self.target.homology)?;
        writeln!(f, "homology-equal {}", self.homology_equal)?;
        writeln!(f, "abelianization-equal {}", self.abelianization_equal)?;
        match &self.certificates {
            CertificateStatus::Absent => writeln!(f, "certificates absent")?,
            CertificateStatus::Valid => writeln!(f, "certificates valid (product preservation assumed)")?,
            CertificateStatus::Invalid(r) => writeln!(f, "certificates invalid: {r}")?,
        }
        let outcome = match self.outcome {
            ComparisonOutcome::Agree => "agree",
            ComparisonOutcome::Mismatch => "mismatch",
            ComparisonOutcome::CounterexampleWitness => "counterexample-witness",
        };
        writeln!(f, "outcome {outcome}")
    }
}
