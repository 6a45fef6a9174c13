//! Smith normal form over the integers.
//!
//! The dense routine keeps both transforms so that `L * M * R = D` can be
//! re-checked. Homology only needs the invariant factors, which go through
//! [`invariant_factors`]: unit pivots are eliminated sparsely first and the
//! leftover core is handed to the dense routine.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j].clone();
            if !s.is_zero() {
                self.data[target * self.cols + j] -= q * s;
            }
        }
    }

    /// col[target] -= q * col[source]
    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source].clone();
            if !s.is_zero() {
                self.data[i * self.cols + target] -= q * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[r * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors d1 | d2 | ..., all positive.
    pub factors: Vec<BigInt>,
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Re-verifies `left * m * right == diagonal`.
    pub fn check(&self, m: &IntMatrix) -> bool {
        self.left.mul(m).mul(&self.right) == self.diagonal
    }
}

struct Reducer {
    m: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        self.m.sub_row(target, source, q);
        if let Some(l) = &mut self.left {
            l.sub_row(target, source, q);
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        self.m.sub_col(target, source, q);
        if let Some(r) = &mut self.right {
            r.sub_col(target, source, q);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.m.negate_row(r);
        if let Some(l) = &mut self.left {
            l.negate_row(r);
        }
    }

    /// Minimal nonzero |entry| in the trailing block; ties go to the smallest (row, col).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m.rows {
            for j in t..self.m.cols {
                let v = self.m.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.m.get(bi, bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = (self.m.rows, self.m.cols);
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut dirty = false;
                for i in t + 1..rows {
                    if self.m.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.m.get(i, t).div_floor(self.m.get(t, t));
                    self.sub_row(i, t, &q);
                    if !self.m.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if self.m.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.m.get(t, j).div_floor(self.m.get(t, t));
                    self.sub_col(j, t, &q);
                    if !self.m.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a smaller remainder exists in row or column t; bring it to the pivot
                    let mut best = (t, t);
                    for i in t..rows {
                        let v = self.m.get(i, t);
                        if !v.is_zero() && v.abs() < self.m.get(best.0, best.1).abs() {
                            best = (i, t);
                        }
                    }
                    for j in t..cols {
                        let v = self.m.get(t, j);
                        if !v.is_zero() && v.abs() < self.m.get(best.0, best.1).abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility: every trailing entry must be a multiple of the pivot
                let pivot = self.m.get(t, t).clone();
                let mut offender = None;
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !self.m.get(i, j).is_multiple_of(&pivot) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        // row t += row i
                        self.sub_row(t, i, &BigInt::from(-1));
                    }
                    None => break,
                }
            }
            if self.m.get(t, t).is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form with transforms: `left * m * right == diagonal`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        m: m.clone(),
        left: Some(IntMatrix::identity(m.rows)),
        right: Some(IntMatrix::identity(m.cols)),
    };
    let rank = r.run();
    let factors = (0..rank).map(|i| r.m.get(i, i).clone()).collect();
    SmithForm {
        factors,
        diagonal: r.m,
        left: r.left.unwrap(),
        right: r.right.unwrap(),
    }
}

fn dense_factors(m: IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer {
        m,
        left: None,
        right: None,
    };
    let rank = r.run();
    (0..rank).map(|i| r.m.get(i, i).clone()).collect()
}

/// Sparse integer matrix stored by columns.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        SparseMatrix { rows, columns }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.columns.len());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                let cur = m.get(i, j) + BigInt::from(v);
                m.set(i, j, cur);
            }
        }
        m
    }

    /// `self * other`, used to assert `∂∂ = 0`.
    pub fn compose_is_zero(&self, other: &SparseMatrix) -> bool {
        // (self * other) column j = sum over (k, v) in other.col j of v * self.col k
        for col in &other.columns {
            let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
            for &(k, v) in col {
                for &(i, w) in &self.columns[k] {
                    *acc.entry(i).or_default() += v as i128 * w as i128;
                }
            }
            if acc.values().any(|&x| x != 0) {
                return false;
            }
        }
        true
    }
}

/// Nonzero invariant factors of a sparse matrix.
///
/// Entries equal to ±1 are eliminated first; each such pivot contributes a
/// factor 1. Whatever survives goes through the dense BigInt reduction.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut cols: Vec<BTreeMap<usize, i64>> = m
        .columns
        .iter()
        .map(|c| {
            let mut map = BTreeMap::new();
            for &(i, v) in c {
                *map.entry(i).or_insert(0i64) += v;
            }
            map.retain(|_, v| *v != 0);
            map
        })
        .collect();
    let mut row_index: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            row_index[i].insert(j);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut units = 0usize;

    'outer: loop {
        let mut progressed = false;
        for c in 0..cols.len() {
            if !alive[c] {
                continue;
            }
            if cols[c].is_empty() {
                alive[c] = false;
                continue;
            }
            let pivot_row = cols[c]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(i, _)| (row_index[**i].len(), **i))
                .map(|(i, _)| *i);
            let Some(r) = pivot_row else { continue };
            let u = cols[c][&r];
            let pivot_col: Vec<(usize, i64)> = cols[c].iter().map(|(i, v)| (*i, *v)).collect();
            let others: Vec<usize> = row_index[r].iter().copied().filter(|&j| j != c).collect();
            for j in others {
                let v = cols[j][&r];
                let q = v * u; // u is its own inverse
                let mut updates = Vec::with_capacity(pivot_col.len());
                for &(i, pv) in &pivot_col {
                    let cur = cols[j].get(&i).copied().unwrap_or(0);
                    match q.checked_mul(pv).and_then(|d| cur.checked_sub(d)) {
                        Some(nv) => updates.push((i, nv)),
                        None => break 'outer,
                    }
                }
                for (i, nv) in updates {
                    if nv == 0 {
                        cols[j].remove(&i);
                        row_index[i].remove(&j);
                    } else {
                        cols[j].insert(i, nv);
                        row_index[i].insert(j);
                    }
                }
            }
            for &(i, _) in &pivot_col {
                row_index[i].remove(&c);
            }
            cols[c].clear();
            alive[c] = false;
            units += 1;
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    // Remaining core (rows still touched, columns still alive).
    let live_cols: Vec<usize> = (0..cols.len()).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    let mut live_rows: Vec<usize> = live_cols
        .iter()
        .flat_map(|&c| cols[c].keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    live_rows.sort_unstable();
    let mut factors = vec![BigInt::one(); units];
    if live_cols.is_empty() {
        return factors;
    }
    let row_pos: BTreeMap<usize, usize> = live_rows.iter().enumerate().map(|(p, &r)| (r, p)).collect();
    let mut core = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (p, &c) in live_cols.iter().enumerate() {
        for (&i, &v) in &cols[c] {
            core.set(row_pos[&i], p, BigInt::from(v));
        }
    }
    factors.extend(dense_factors(core));
    factors.sort();
    factors
}

pub fn rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}
