use crate::complex::Operator;

/// A monotone map `[m] -> [n]`, stored as its list of values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monotone {
    target: u16,
    values: Vec<u16>,
}

impl Monotone {
    pub fn new(target: usize, values: Vec<usize>) -> Option<Self> {
        if values.is_empty() || values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > target) {
            return None;
        }
        Some(Monotone {
            target: target as u16,
            values: values.into_iter().map(|v| v as u16).collect(),
        })
    }

    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().map(|&v| v as usize)
    }

    pub fn value(&self, i: usize) -> usize {
        self.values[i] as usize
    }

    /// The constant map `[m] -> [n]` at `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        Monotone::new(n, vec![v; m + 1]).expect("valid constant map")
    }

    /// Inclusion of a sorted vertex subset of `[n]`.
    pub fn inclusion(n: usize, vertices: &[usize]) -> Option<Self> {
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return None;
        }
        Monotone::new(n, vertices.to_vec())
    }

    fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }
}

impl Operator for Monotone {
    const KIND: &'static str = "simplicial";

    fn source(&self) -> usize {
        self.values.len() - 1
    }

    fn target(&self) -> usize {
        self.target as usize
    }

    fn identity(n: usize) -> Self {
        Monotone {
            target: n as u16,
            values: (0..=n as u16).collect(),
        }
    }

    fn after(&self, inner: &Self) -> Self {
        debug_assert_eq!(inner.target(), self.source());
        Monotone {
            target: self.target,
            values: inner.values.iter().map(|&v| self.values[v as usize]).collect(),
        }
    }

    fn is_degeneracy(&self) -> bool {
        self.is_surjective()
    }

    fn peel_face(&self) -> Option<(usize, Self)> {
        let n = self.target as usize;
        let missing = (0..=n).rev().find(|v| !self.values.contains(&(*v as u16)))?;
        let rest = Monotone {
            target: self.target - 1,
            values: self
                .values
                .iter()
                .map(|&v| if v as usize > missing { v - 1 } else { v })
                .collect(),
        };
        Some((missing, rest))
    }

    fn face_count(n: usize) -> usize {
        if n == 0 {
            0
        } else {
            n + 1
        }
    }

    fn face(n: usize, slot: usize) -> Self {
        Monotone {
            target: n as u16,
            values: (0..=n as u16).filter(|&v| v as usize != slot).collect(),
        }
    }

    fn face_sign(_n: usize, slot: usize) -> i64 {
        if slot % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn slot_label(_n: usize, slot: usize) -> String {
        slot.to_string()
    }

    fn parse_slot(n: usize, label: &[&str]) -> Option<usize> {
        match label {
            [i] => i.parse().ok().filter(|&i: &usize| i <= n && n > 0),
            _ => None,
        }
    }

    fn elementary_degeneracies(n: usize) -> Vec<Self> {
        (0..=n)
            .map(|j| Monotone {
                target: n as u16,
                values: (0..=(n + 1) as u16).map(|t| if t as usize <= j { t } else { t - 1 }).collect(),
            })
            .collect()
    }

    fn section_slot(_n: usize, j: usize) -> usize {
        j
    }

    fn degeneracies(n: usize, k: usize) -> Vec<Self> {
        if k > n {
            return Vec::new();
        }
        // choose the k positions 1..=n where the value steps up
        let mut out = Vec::new();
        let mut steps = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, steps: &mut Vec<usize>, out: &mut Vec<Monotone>) {
            if steps.len() == k {
                let mut values = Vec::with_capacity(n + 1);
                let mut v = 0u16;
                for p in 0..=n {
                    if steps.contains(&p) {
                        v += 1;
                    }
                    values.push(v);
                }
                out.push(Monotone {
                    target: k as u16,
                    values,
                });
                return;
            }
            for p in start..=n {
                steps.push(p);
                rec(p + 1, n, k, steps, out);
                steps.pop();
            }
        }
        rec(1, n, k, &mut steps, &mut out);
        out.sort();
        out
    }

    fn all(m: usize, n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut values = Vec::with_capacity(m + 1);
        fn rec(m: usize, n: usize, lo: u16, values: &mut Vec<u16>, out: &mut Vec<Monotone>) {
            if values.len() == m + 1 {
                out.push(Monotone {
                    target: n as u16,
                    values: values.clone(),
                });
                return;
            }
            for v in lo..=n as u16 {
                values.push(v);
                rec(m, n, v, values, out);
                values.pop();
            }
        }
        rec(m, n, 0, &mut values, &mut out);
        out
    }

    fn word(&self) -> String {
        let mut positions: Vec<usize> = self
            .values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] == w[1])
            .map(|(p, _)| p)
            .collect();
        positions.reverse();
        positions.iter().map(|p| format!("s{p}")).collect()
    }

    fn parse_word(word: &str, cell_dim: usize) -> Option<Self> {
        let indices = parse_indices(word)?;
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return None;
        }
        // s_{i1} ... s_{ik} x with the rightmost applied first
        let mut op = Monotone::identity(cell_dim);
        let mut dim = cell_dim;
        for &i in indices.iter().rev() {
            if i > dim {
                return None;
            }
            let s = Monotone::elementary_degeneracies(dim).swap_remove(i);
            op = op.after(&s);
            dim += 1;
        }
        Some(op)
    }

    fn morphism_id(&self) -> String {
        let vals: String = self.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
        format!("{}>{}:{}", self.source(), self.target, vals)
    }

    fn object_id(n: usize) -> String {
        format!("[{n}]")
    }

    fn edge_endpoints() -> (usize, usize) {
        (1, 0)
    }

    fn square_loop() -> Vec<(usize, bool)> {
        vec![(2, true), (0, true), (1, false)]
    }
}

/// Parses `s3s1s0` into `[3, 1, 0]`; the empty word is valid.
pub(crate) fn parse_indices(word: &str) -> Option<Vec<usize>> {
    if word.is_empty() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    for part in word.split('s').skip(1) {
        out.push(part.parse().ok()?);
    }
    if !word.starts_with('s') {
        return None;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_roundtrip_all_surjections() {
        for n in 0..6 {
            for k in 0..=n {
                for s in Monotone::degeneracies(n, k) {
                    let w = s.word();
                    assert_eq!(Monotone::parse_word(&w, k), Some(s.clone()), "word {w}");
                }
            }
        }
    }

    #[test]
    fn counts() {
        // C(n+m+1, m+1) monotone maps [m] -> [n]
        assert_eq!(Monotone::all(2, 2).len(), 10);
        assert_eq!(Monotone::all(1, 3).len(), 10);
        assert_eq!(Monotone::degeneracies(3, 1).len(), 3);
    }

    #[test]
    fn peel_reassembles() {
        for m in 0..4 {
            for n in 0..4 {
                for op in Monotone::all(m, n) {
                    let mut rebuilt_faces = Vec::new();
                    let mut cur = op.clone();
                    while let Some((slot, rest)) = cur.peel_face() {
                        rebuilt_faces.push((cur.target(), slot));
                        cur = rest;
                    }
                    assert!(cur.is_degeneracy());
                    let mut acc = cur;
                    for (dim, slot) in rebuilt_faces.into_iter().rev() {
                        acc = Monotone::face(dim, slot).after(&acc);
                    }
                    assert_eq!(acc, op);
                }
            }
        }
    }
}
