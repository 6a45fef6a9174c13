//! The subobject classifier: sieves and their pullbacks.

use std::collections::HashMap;
use std::sync::Arc;

use super::{FiniteCategory, SetPresheaf};
use crate::error::{Error, Result};

/// Sieves on `a`, as sorted lists of morphisms into `a`, enumerated as downsets of the
/// factorization preorder `f <= h` iff `f = h ∘ g`.
pub fn sieves(c: &FiniteCategory, a: usize, size_budget: usize) -> Result<Vec<Vec<usize>>> {
    let into: Vec<usize> = c.incoming(a).to_vec();
    let k = into.len();
    let pos: HashMap<usize, usize> = into.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    // below[i] = positions j with into[j] = into[i] ∘ g for some g
    let below: Vec<Vec<usize>> = into
        .iter()
        .map(|&h| {
            let mut v: Vec<usize> = c.incoming(c.source(h)).iter().map(|&g| pos[&c.compose(h, g)]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    // a generated sieve is a union of principal ones; search over membership decisions
    let mut out = Vec::new();
    let mut member = vec![None::<bool>; k];
    fn rec(i: usize, member: &mut Vec<Option<bool>>, below: &[Vec<usize>], out: &mut Vec<Vec<bool>>, limit: usize) -> bool {
        if i == member.len() {
            out.push(member.iter().map(|m| m.unwrap_or(false)).collect());
            return out.len() <= limit;
        }
        if member[i].is_some() {
            return rec(i + 1, member, below, out, limit);
        }
        let snapshot = member.clone();
        // exclude i: nothing above i may be included later, which the include branch checks
        member[i] = Some(false);
        if !rec(i + 1, member, below, out, limit) {
            return false;
        }
        *member = snapshot.clone();
        // include i: everything below is forced in
        if below[i].iter().all(|&j| member[j] != Some(false)) {
            for &j in &below[i] {
                member[j] = Some(true);
            }
            if !rec(i + 1, member, below, out, limit) {
                return false;
            }
        }
        *member = snapshot;
        true
    }
    let mut raw = Vec::new();
    if !rec(0, &mut member, &below, &mut raw, size_budget) {
        return Err(Error::budget(format!("sieves on {}", c.objects()[a]), size_budget));
    }
    for m in raw {
        out.push((0..k).filter(|&i| m[i]).map(|i| into[i]).collect::<Vec<_>>());
    }
    Ok(out)
}

fn sieve_id(c: &FiniteCategory, s: &[usize]) -> String {
    let mut ids: Vec<&str> = s.iter().map(|&f| c.morphisms()[f].id.as_str()).collect();
    ids.sort_unstable();
    format!("{{{}}}", ids.join(","))
}

/// `Ω(a)` is the set of sieves on `a`; `Ω(f)(S) = { g | f ∘ g ∈ S }`.
pub fn subobject_classifier(c: Arc<FiniteCategory>, size_budget: usize) -> Result<SetPresheaf> {
    let all = (0..c.object_count()).map(|a| sieves(&c, a, size_budget)).collect::<Result<Vec<_>>>()?;
    let index: Vec<HashMap<Vec<usize>, usize>> = all
        .iter()
        .map(|ss| {
            ss.iter()
                .enumerate()
                .map(|(i, s)| {
                    let mut s = s.clone();
                    s.sort_unstable();
                    (s, i)
                })
                .collect()
        })
        .collect();
    let elements = all.iter().map(|ss| ss.iter().map(|s| sieve_id(&c, s)).collect()).collect();
    let action = (0..c.morphism_count())
        .map(|f| {
            let (b, a) = (c.source(f), c.target(f));
            all[a]
                .iter()
                .map(|s| {
                    let mut pulled: Vec<usize> = c.incoming(b).iter().copied().filter(|&g| s.contains(&c.compose(f, g))).collect();
                    pulled.sort_unstable();
                    index[b][&pulled]
                })
                .collect()
        })
        .collect();
    SetPresheaf::new(c, elements, action)
}
