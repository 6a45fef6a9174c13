use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::chain::{chain_complex, ChainComplex};
use super::snf::{invariant_factors, SparseMatrix};
use crate::complex::{Complex, Operator};
use crate::error::Result;
use crate::par;

/// A finitely generated abelian group `Z^rank ⊕ Z/t₁ ⊕ ... ⊕ Z/t_k` with `t₁ | t₂ | ...`, all `t > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Cokernel of `m : Z^cols -> Z^rows`.
    pub fn cokernel(m: &SparseMatrix) -> Self {
        let factors = invariant_factors(m);
        AbelianGroup {
            rank: m.rows - factors.len(),
            torsion: factors.into_iter().filter(|f| !f.is_one()).collect(),
        }
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.try_into().unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integral homology in degrees `0..=dmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub dmax: usize,
    pub groups: Vec<AbelianGroup>,
}

impl HomologyReport {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    /// Betti numbers with trailing zeros removed, e.g. `[1, 0, 1]` for the 2-sphere.
    pub fn betti_trimmed(&self) -> Vec<usize> {
        let mut b = self.betti();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn torsion(&self, n: usize) -> Vec<u64> {
        self.groups.get(n).map_or(Vec::new(), |g| g.torsion_u64())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(n, g)| if n % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) })
            .sum()
    }

    /// Reduced homology in degree `n` vanishes.
    pub fn reduced_vanishes(&self, n: usize) -> bool {
        match self.groups.get(n) {
            Some(g) if n == 0 => g.rank == 1 && g.torsion.is_empty(),
            Some(g) => g.is_trivial(),
            None => true,
        }
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().enumerate().map(|(n, g)| format!("H{n}={g}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Homology from a chain complex that extends at least one degree past `dmax`.
pub fn homology_of(c: &ChainComplex, dmax: usize) -> HomologyReport {
    let degrees: Vec<usize> = (0..=dmax + 1).collect();
    let factors = par::map(&degrees, |&n| invariant_factors(&c.boundary(n)));
    let groups = (0..=dmax)
        .map(|n| {
            let outgoing = factors[n].len();
            let incoming = &factors[n + 1];
            AbelianGroup {
                rank: c.rank(n) - outgoing - incoming.len(),
                torsion: incoming.iter().filter(|f| !f.is_one()).cloned().collect(),
            }
        })
        .collect();
    HomologyReport { dmax, groups }
}

/// Integral homology of a complex in degrees `0..=dmax`, via Smith normal form.
pub fn homology<O: Operator>(x: &Complex<O>, dmax: usize) -> Result<HomologyReport> {
    Ok(homology_of(&chain_complex(x, dmax + 1)?, dmax))
}
