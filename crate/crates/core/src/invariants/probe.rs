use std::fmt;

use super::homology::{homology, AbelianGroup, HomologyReport};
use super::pi1::{pi1_presentation, DEFAULT_TIETZE_BUDGET};
use crate::complex::{Complex, Operator};
use crate::error::Result;

/// What stands in the way of contractibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Empty, or more than one path component.
    Disconnected { components: usize },
    /// Nonzero reduced homology.
    Homology { degree: usize, group: AbelianGroup },
    /// Nontrivial abelianized fundamental group.
    Pi1 { abelianization: AbelianGroup },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Disconnected { components } => write!(f, "disconnected ({components} components)"),
            Obstruction::Homology { degree, group } => write!(f, "H{degree} = {group}"),
            Obstruction::Pi1 { abelianization } => write!(f, "pi1 abelianization {abelianization}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Nothing detected in degrees up to the bound; not a proof of contractibility.
    NoObstructionUpTo(usize),
    Obstructed(Obstruction),
}

impl Verdict {
    pub fn passes(&self) -> bool {
        matches!(self, Verdict::NoObstructionUpTo(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NoObstructionUpTo(d) => write!(f, "no-obstruction-up-to-{d}"),
            Verdict::Obstructed(o) => write!(f, "obstructed({o})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractibilityReport {
    pub degree_bound: usize,
    pub connected: bool,
    /// reduced homology vanishes, per degree `0..=degree_bound`
    pub reduced_vanishing: Vec<bool>,
    pub pi1_abelian_trivial: bool,
    pub homology: HomologyReport,
    pub verdict: Verdict,
}

/// Bounded evidence for contractibility: connectivity, reduced homology up to `d`, and the
/// abelianized fundamental group. Never claims anything beyond degree `d`.
pub fn contractibility_probe<O: Operator>(x: &Complex<O>, d: usize) -> Result<ContractibilityReport> {
    let h = homology(x, d)?;
    let components = h.groups[0].rank;
    let connected = components == 1;
    let reduced_vanishing: Vec<bool> = (0..=d).map(|n| h.reduced_vanishes(n)).collect();
    let abelianization = if connected {
        let base = x.id(x.cell_ids(0).next().expect("connected complexes have a vertex")).to_string();
        pi1_presentation(x, &base, DEFAULT_TIETZE_BUDGET)?.abelianization()
    } else {
        AbelianGroup::trivial()
    };
    let pi1_abelian_trivial = abelianization.is_trivial();
    let verdict = if !connected {
        Verdict::Obstructed(Obstruction::Disconnected { components })
    } else if let Some(n) = (1..=d).find(|&n| !reduced_vanishing[n]) {
        Verdict::Obstructed(Obstruction::Homology {
            degree: n,
            group: h.groups[n].clone(),
        })
    } else if !pi1_abelian_trivial {
        Verdict::Obstructed(Obstruction::Pi1 { abelianization })
    } else {
        Verdict::NoObstructionUpTo(d)
    };
    Ok(ContractibilityReport {
        degree_bound: d,
        connected,
        reduced_vanishing,
        pi1_abelian_trivial,
        homology: h,
        verdict,
    })
}
