use crate::complex::Operator;
use crate::error::{Error, Result};

/// One output coordinate of a cube map: a constant end or a source coordinate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Slot {
    Const(bool),
    Var(u8),
}

/// A morphism `□^m -> □^n` of the cube category (faces and degeneracies only).
///
/// Normal form: each source coordinate is used at most once and the used ones
/// appear in increasing order across the output slots.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CubeMorphism {
    source: u8,
    slots: Vec<Slot>,
}

impl CubeMorphism {
    pub fn new(source: usize, slots: Vec<Slot>) -> Result<Self> {
        let mut last: Option<u8> = None;
        for s in &slots {
            if let Slot::Var(i) = s {
                if *i as usize >= source || last.is_some_and(|l| l >= *i) {
                    return Err(Error::invalid(format!(
                        "cube map {slots:?} from arity {source} is not in normal form"
                    )));
                }
                last = Some(*i);
            }
        }
        Ok(CubeMorphism {
            source: source as u8,
            slots,
        })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// δ_i^ξ : □^{n-1} -> □^n with `i` 1-based, inserting the constant ξ at coordinate i.
    pub fn delta(n: usize, i: usize, xi: bool) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::invalid(format!("face index {i} out of range for □^{n}")));
        }
        Ok(Self::face(n, 2 * (i - 1) + xi as usize))
    }

    /// σ_i : □^n -> □^{n-1}, forgetting coordinate i (1-based).
    pub fn sigma(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::invalid(format!("degeneracy index {i} out of range for □^{n}")));
        }
        Ok(Self::elementary_degeneracies(n - 1).swap_remove(i - 1))
    }

    /// The underlying function `{0,1}^m -> {0,1}^n`.
    pub fn eval(&self, point: &[bool]) -> Vec<bool> {
        assert_eq!(point.len(), self.source as usize);
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Const(b) => *b,
                Slot::Var(i) => point[*i as usize],
            })
            .collect()
    }

    /// Slots rendered over `0`, `1` and `a`, `b`, ... for source coordinates.
    pub fn slot_string(&self) -> String {
        self.slots
            .iter()
            .map(|s| match s {
                Slot::Const(false) => '0',
                Slot::Const(true) => '1',
                Slot::Var(i) => (b'a' + i) as char,
            })
            .collect()
    }
}

/// Composite `g ∘ f` with an arity check.
pub fn cube_compose(g: &CubeMorphism, f: &CubeMorphism) -> Result<CubeMorphism> {
    if f.target() != g.source() {
        return Err(Error::invalid(format!(
            "arity mismatch: f lands in □^{}, g starts at □^{}",
            f.target(),
            g.source()
        )));
    }
    Ok(g.after(f))
}

impl Operator for CubeMorphism {
    const KIND: &'static str = "cubical";

    fn source(&self) -> usize {
        self.source as usize
    }

    fn target(&self) -> usize {
        self.slots.len()
    }

    fn identity(n: usize) -> Self {
        CubeMorphism {
            source: n as u8,
            slots: (0..n as u8).map(Slot::Var).collect(),
        }
    }

    fn after(&self, inner: &Self) -> Self {
        debug_assert_eq!(inner.target(), self.source());
        CubeMorphism {
            source: inner.source,
            slots: self
                .slots
                .iter()
                .map(|s| match s {
                    Slot::Const(b) => Slot::Const(*b),
                    Slot::Var(i) => inner.slots[*i as usize],
                })
                .collect(),
        }
    }

    fn is_degeneracy(&self) -> bool {
        self.slots.iter().all(|s| matches!(s, Slot::Var(_)))
    }

    fn peel_face(&self) -> Option<(usize, Self)> {
        let (pos, xi) = self.slots.iter().enumerate().rev().find_map(|(p, s)| match s {
            Slot::Const(b) => Some((p, *b)),
            _ => None,
        })?;
        let mut rest = self.slots.clone();
        rest.remove(pos);
        Some((
            2 * pos + xi as usize,
            CubeMorphism {
                source: self.source,
                slots: rest,
            },
        ))
    }

    fn face_count(n: usize) -> usize {
        2 * n
    }

    fn face(n: usize, slot: usize) -> Self {
        let (pos, xi) = (slot / 2, slot % 2 == 1);
        let mut slots: Vec<Slot> = (0..(n - 1) as u8).map(Slot::Var).collect();
        slots.insert(pos, Slot::Const(xi));
        CubeMorphism {
            source: (n - 1) as u8,
            slots,
        }
    }

    fn face_sign(_n: usize, slot: usize) -> i64 {
        // (-1)^i (face(i,1) - face(i,0)), i 1-based
        let i = slot / 2 + 1;
        let parity = if i % 2 == 0 { 1 } else { -1 };
        if slot % 2 == 1 {
            parity
        } else {
            -parity
        }
    }

    fn slot_label(_n: usize, slot: usize) -> String {
        format!("{} {}", slot / 2 + 1, slot % 2)
    }

    fn parse_slot(n: usize, label: &[&str]) -> Option<usize> {
        match label {
            [i, xi] => {
                let i: usize = i.parse().ok()?;
                let xi: usize = match *xi {
                    "0" => 0,
                    "1" => 1,
                    _ => return None,
                };
                (i >= 1 && i <= n).then_some(2 * (i - 1) + xi)
            }
            _ => None,
        }
    }

    fn elementary_degeneracies(n: usize) -> Vec<Self> {
        (0..=n)
            .map(|drop| CubeMorphism {
                source: (n + 1) as u8,
                slots: (0..(n + 1) as u8).filter(|&c| c as usize != drop).map(Slot::Var).collect(),
            })
            .collect()
    }

    fn section_slot(_n: usize, j: usize) -> usize {
        2 * j
    }

    fn degeneracies(n: usize, k: usize) -> Vec<Self> {
        if k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut kept = Vec::with_capacity(k);
        fn rec(start: u8, n: u8, k: usize, kept: &mut Vec<u8>, out: &mut Vec<CubeMorphism>) {
            if kept.len() == k {
                out.push(CubeMorphism {
                    source: n,
                    slots: kept.iter().map(|&c| Slot::Var(c)).collect(),
                });
                return;
            }
            for c in start..n {
                kept.push(c);
                rec(c + 1, n, k, kept, out);
                kept.pop();
            }
        }
        rec(0, n as u8, k, &mut kept, &mut out);
        out.sort();
        out
    }

    fn all(m: usize, n: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut slots = Vec::with_capacity(n);
        fn rec(m: u8, n: usize, next: u8, slots: &mut Vec<Slot>, out: &mut Vec<CubeMorphism>) {
            if slots.len() == n {
                out.push(CubeMorphism {
                    source: m,
                    slots: slots.clone(),
                });
                return;
            }
            for b in [false, true] {
                slots.push(Slot::Const(b));
                rec(m, n, next, slots, out);
                slots.pop();
            }
            for v in next..m {
                slots.push(Slot::Var(v));
                rec(m, n, v + 1, slots, out);
                slots.pop();
            }
        }
        rec(m as u8, n, 0, &mut slots, &mut out);
        out
    }

    fn word(&self) -> String {
        let kept: Vec<usize> = self
            .slots
            .iter()
            .filter_map(|s| match s {
                Slot::Var(i) => Some(*i as usize),
                _ => None,
            })
            .collect();
        (0..self.source as usize)
            .rev()
            .filter(|c| !kept.contains(c))
            .map(|c| format!("s{}", c + 1))
            .collect()
    }

    fn parse_word(word: &str, cell_dim: usize) -> Option<Self> {
        let dropped = crate::simplicial::monotone::parse_indices(word)?;
        if dropped.windows(2).any(|w| w[0] <= w[1]) || dropped.contains(&0) {
            return None;
        }
        let source = cell_dim + dropped.len();
        if dropped.iter().any(|&c| c > source) {
            return None;
        }
        Some(CubeMorphism {
            source: source as u8,
            slots: (0..source as u8)
                .filter(|c| !dropped.contains(&(*c as usize + 1)))
                .map(Slot::Var)
                .collect(),
        })
    }

    fn morphism_id(&self) -> String {
        format!("{}>{}:{}", self.source, self.slots.len(), self.slot_string())
    }

    fn object_id(n: usize) -> String {
        format!("c{n}")
    }

    fn edge_endpoints() -> (usize, usize) {
        (0, 1)
    }

    fn square_loop() -> Vec<(usize, bool)> {
        // (0,0) -> (1,0) -> (1,1) -> (0,1) -> (0,0)
        vec![(2, true), (1, true), (3, false), (0, false)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(m: usize) -> Vec<Vec<bool>> {
        (0..1u32 << m)
            .map(|bits| (0..m).map(|i| bits >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn sigma_after_delta_is_identity() {
        let s = CubeMorphism::sigma(1, 1).unwrap();
        let d = CubeMorphism::delta(1, 1, false).unwrap();
        assert_eq!(cube_compose(&s, &d).unwrap(), CubeMorphism::identity(0));
    }

    #[test]
    fn two_faces_of_a_point() {
        let d21 = CubeMorphism::delta(2, 2, true).unwrap();
        let d10 = CubeMorphism::delta(1, 1, false).unwrap();
        let c = cube_compose(&d21, &d10).unwrap();
        assert_eq!(c.slots(), &[Slot::Const(false), Slot::Const(true)]);
    }

    #[test]
    fn compose_with_identity() {
        for f in CubeMorphism::all(2, 3) {
            assert_eq!(cube_compose(&CubeMorphism::identity(3), &f).unwrap(), f);
            assert_eq!(cube_compose(&f, &CubeMorphism::identity(2)).unwrap(), f);
        }
    }

    #[test]
    fn arity_mismatch_rejected() {
        let f = CubeMorphism::identity(1);
        let g = CubeMorphism::identity(2);
        assert!(cube_compose(&g, &f).is_err());
    }

    #[test]
    fn compose_agrees_with_evaluation() {
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    let fs = CubeMorphism::all(a, b);
                    let gs = CubeMorphism::all(b, c);
                    for f in &fs {
                        for g in &gs {
                            let gf = cube_compose(g, f).unwrap();
                            CubeMorphism::new(a, gf.slots.clone()).expect("normal form");
                            for p in points(a) {
                                assert_eq!(gf.eval(&p), g.eval(&f.eval(&p)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degeneracy_words_roundtrip() {
        for n in 0..5 {
            for k in 0..=n {
                for s in CubeMorphism::degeneracies(n, k) {
                    assert_eq!(CubeMorphism::parse_word(&s.word(), k), Some(s));
                }
            }
        }
    }
}
