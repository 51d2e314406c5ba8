//! Exact rational sparse linear algebra.
//!
//! Everything rank-, kernel- or span-related in the crate goes through this
//! module. Vectors are sparse maps from an ordered key type to [`Rational`];
//! the key order is the column order, so pivots are always chosen as the
//! first nonzero key and results are reproducible across runs.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

mod rational;

pub use rational::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Renders a rational as `p` or `p/q`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Finitely supported vector with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec<K: Ord> {
    entries: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { entries: BTreeMap::new() }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for SparseVec<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k:?}: {}", fmt_rational(v))?;
        }
        f.write_str("}")
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        let mut v = Self::new();
        v.entries.insert(key, Rational::one());
        v
    }

    pub fn from_pairs<I: IntoIterator<Item = (K, Rational)>>(pairs: I) -> Self {
        let mut v = Self::new();
        for (k, c) in pairs {
            v.add_term(k, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &K) -> Option<&Rational> {
        self.entries.get(key)
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn first_key(&self) -> Option<&K> {
        self.entries.keys().next()
    }

    pub fn into_pairs(self) -> impl Iterator<Item = (K, Rational)> {
        self.entries.into_iter()
    }

    /// Adds `c * key`, removing the entry if it cancels.
    pub fn add_term(&mut self, key: K, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SparseVec<K>, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.entries {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        SparseVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), -v)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    /// Re-keys every entry; colliding keys are summed.
    pub fn map_keys<K2: Ord + Clone, F: FnMut(&K) -> K2>(&self, mut f: F) -> SparseVec<K2> {
        let mut out = SparseVec::new();
        for (k, v) in &self.entries {
            out.add_term(f(k), v);
        }
        out
    }

    pub fn dot(&self, other: &Self) -> Rational {
        let mut acc = Rational::zero();
        for (k, v) in &self.entries {
            if let Some(w) = other.entries.get(k) {
                acc += v * w;
            }
        }
        acc
    }

    /// Removes the component along pivot rows of an echelon set, smallest key first.
    fn reduce_against(&mut self, pivots: &BTreeMap<K, usize>, rows: &[SparseVec<K>], mut track: Option<(&mut SparseVec<usize>, &[SparseVec<usize>])>) {
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => self.entries.keys().find(|k| pivots.contains_key(k)).cloned(),
                Some(c) => self
                    .entries
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| pivots.contains_key(k))
                    .cloned(),
            };
            let Some(k) = next else { break };
            let idx = pivots[&k];
            let factor = -self.entries[&k].clone();
            self.add_scaled(&rows[idx], &factor);
            if let Some((acc, combos)) = track.as_mut() {
                acc.add_scaled(&combos[idx], &factor);
            }
            cursor = Some(k);
        }
    }
}

impl<K: Ord + Clone + fmt::Display> SparseVec<K> {
    /// Human readable `c*key + ...` form.
    pub fn render(&self) -> String {
        self.render_with(|k| k.to_string())
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn render_with<F: Fn(&K) -> String>(&self, name: F) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (k, v)) in self.entries.iter().enumerate() {
            let neg = v.is_negative();
            let abs = v.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&fmt_rational(&abs));
                s.push('*');
            }
            s.push_str(&name(k));
        }
        s
    }
}

/// Rows over an explicit, finite column universe.
#[derive(Clone, Debug)]
pub struct ExactMatrix<K: Ord> {
    pub columns: Vec<K>,
    pub rows: Vec<SparseVec<K>>,
}

impl<K: Ord + Clone> ExactMatrix<K> {
    /// Builds a matrix whose column universe is the union of the row supports.
    pub fn from_rows(rows: Vec<SparseVec<K>>) -> Self {
        let mut cols: Vec<K> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
        cols.sort();
        cols.dedup();
        ExactMatrix { columns: cols, rows }
    }

    pub fn with_columns(columns: Vec<K>, rows: Vec<SparseVec<K>>) -> Self {
        let mut columns = columns;
        columns.sort();
        columns.dedup();
        ExactMatrix { columns, rows }
    }
}

#[derive(Clone, Debug)]
pub struct Rref<K: Ord> {
    pub rank: usize,
    /// Reduced row echelon basis of the row space, ordered by pivot key.
    pub row_basis: Vec<SparseVec<K>>,
    pub pivots: Vec<K>,
    /// Basis of `{x : row . x = 0 for every row}` over the column universe.
    pub kernel_basis: Vec<SparseVec<K>>,
}

/// Gauss-Jordan elimination over the rationals.
pub fn rref<K: Ord + Clone>(m: &ExactMatrix<K>) -> Rref<K> {
    let mut ech = Echelon::new();
    for r in &m.rows {
        ech.insert(r.clone());
    }
    let mut rows: Vec<(K, SparseVec<K>)> = ech.pivot_keys.iter().map(|(k, &i)| (k.clone(), ech.rows[i].clone())).collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    // back substitution: clear each pivot column above and below
    let pivot_index: BTreeMap<K, usize> = rows.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect();
    for i in (0..rows.len()).rev() {
        let (pk, prow) = rows[i].clone();
        for (j, row) in rows.iter_mut().enumerate() {
            if j == i {
                continue;
            }
            if let Some(c) = row.1.get(&pk).cloned() {
                row.1.add_scaled(&prow, &-c);
            }
        }
    }
    let pivots: Vec<K> = rows.iter().map(|(k, _)| k.clone()).collect();
    let row_basis: Vec<SparseVec<K>> = rows.into_iter().map(|(_, r)| r).collect();
    let mut kernel_basis = Vec::new();
    for free in m.columns.iter().filter(|c| !pivot_index.contains_key(c)) {
        let mut v = SparseVec::unit(free.clone());
        for (pk, row) in pivots.iter().zip(&row_basis) {
            let c = row.coeff(free);
            if !c.is_zero() {
                v.add_term(pk.clone(), &-c);
            }
        }
        kernel_basis.push(v);
    }
    Rref { rank: pivots.len(), row_basis, pivots, kernel_basis }
}

pub fn rank<K: Ord + Clone>(rows: &[SparseVec<K>]) -> usize {
    let mut ech = Echelon::new();
    rows.iter().filter(|r| ech.insert((*r).clone())).count()
}

/// Exact membership of `v` in the rational span of `basis`.
pub fn span_contains<K: Ord + Clone>(basis: &[SparseVec<K>], v: &SparseVec<K>) -> bool {
    let mut ech = Echelon::new();
    for b in basis {
        ech.insert(b.clone());
    }
    ech.contains(v)
}

/// Incremental echelon basis.
///
/// Each inserted independent vector becomes a row whose smallest key is its
/// pivot (normalised to 1); rows also remember which inserted vectors they
/// are combinations of, so `coordinates` can express a vector of the span in
/// terms of the accepted originals.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord> {
    rows: Vec<SparseVec<K>>,
    combos: Vec<SparseVec<usize>>,
    pivot_keys: BTreeMap<K, usize>,
    accepted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), combos: Vec::new(), pivot_keys: BTreeMap::new(), accepted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivot_keys.keys()
    }

    /// Inserts `v`; returns true (and assigns it the next original index) when
    /// it was independent of what is already stored.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let idx = self.accepted;
        let mut v = v;
        let mut combo = SparseVec::unit(idx);
        v.reduce_against(&self.pivot_keys, &self.rows, Some((&mut combo, &self.combos)));
        let Some(p) = v.first_key().cloned() else { return false };
        let inv = Rational::one() / v.coeff(&p);
        let v = v.scaled(&inv);
        let combo = combo.scaled(&inv);
        self.pivot_keys.insert(p, self.rows.len());
        self.rows.push(v);
        self.combos.push(combo);
        self.accepted += 1;
        true
    }

    /// Residue of `v` after elimination against the stored rows.
    pub fn residue(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut w = v.clone();
        w.reduce_against(&self.pivot_keys, &self.rows, None);
        w
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.residue(v).is_zero()
    }

    /// Coefficients of `v` in terms of the accepted originals, or `None`
    /// when `v` is outside the span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let mut w = v.clone();
        let mut acc = SparseVec::new();
        w.reduce_against(&self.pivot_keys, &self.rows, Some((&mut acc, &self.combos)));
        if w.is_zero() {
            Some(acc.neg())
        } else {
            None
        }
    }
}


/// Span of a growing list of sparse vectors, kept as the original vectors plus
/// an echelon form used only to locate pivot columns.
///
/// Membership is decided by solving on the pivot columns (a short triangular
/// system) and then checking the recombination against the whole vector, so
/// the long echelon rows are only touched when a new vector is accepted.
#[derive(Clone, Debug)]
pub struct SpanSolver<K: Ord> {
    originals: Vec<SparseVec<K>>,
    full: Echelon<K>,
    projected: Echelon<K>,
}

impl<K: Ord + Clone> Default for SpanSolver<K> {
    fn default() -> Self {
        SpanSolver { originals: Vec::new(), full: Echelon::new(), projected: Echelon::new() }
    }
}

impl<K: Ord + Clone> SpanSolver<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.originals.len()
    }

    pub fn originals(&self) -> &[SparseVec<K>] {
        &self.originals
    }

    fn project(&self, v: &SparseVec<K>) -> SparseVec<K> {
        SparseVec::from_pairs(v.iter().filter(|(k, _)| self.full.pivot_keys.contains_key(*k)).map(|(k, c)| (k.clone(), c.clone())))
    }

    /// Coefficients of `v` in terms of the stored vectors, or `None` when `v`
    /// is outside their span.
    pub fn coordinates(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let c = self.projected.coordinates(&self.project(v)).expect("projection onto pivots is onto");
        let mut check = v.clone();
        for (i, x) in c.iter() {
            check.add_scaled(&self.originals[*i], &-x);
        }
        check.is_zero().then_some(c)
    }

    /// Adds `v` when independent; returns its coordinates otherwise.
    pub fn insert(&mut self, v: SparseVec<K>) -> std::result::Result<usize, SparseVec<usize>> {
        if let Some(c) = self.coordinates(&v) {
            return Err(c);
        }
        assert!(self.full.insert(v.clone()), "vector outside the span must be independent");
        self.originals.push(v);
        let mut projected = Echelon::new();
        for o in &self.originals {
            projected.insert(self.project(o));
        }
        self.projected = projected;
        Ok(self.originals.len() - 1)
    }
}

/// Small dense rational matrices (representation matrices, defining matrices of g).
pub mod dense {
    use super::*;

    pub type Mat = Vec<Vec<Rational>>;

    pub fn zeros(r: usize, c: usize) -> Mat {
        vec![vec![Rational::zero(); c]; r]
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = zeros(n, n);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        m
    }

    /// Matrix unit with a one at `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = zeros(n, n);
        m[i][j] = Rational::one();
        m
    }

    pub fn mul(a: &Mat, b: &Mat) -> Mat {
        let rows = a.len();
        let cols = b.first().map_or(0, |r| r.len());
        let mut out = zeros(rows, cols);
        for i in 0..rows {
            for (k, aik) in a[i].iter().enumerate() {
                if aik.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    if !b[k][j].is_zero() {
                        out[i][j] += aik * &b[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn add_scaled(a: &mut Mat, b: &Mat, c: &Rational) {
        for (ra, rb) in a.iter_mut().zip(b) {
            for (x, y) in ra.iter_mut().zip(rb) {
                if !y.is_zero() {
                    *x += y * c;
                }
            }
        }
    }

    pub fn scale(a: &Mat, c: &Rational) -> Mat {
        a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
    }

    pub fn commutator(a: &Mat, b: &Mat) -> Mat {
        let mut out = mul(a, b);
        add_scaled(&mut out, &mul(b, a), &-Rational::one());
        out
    }

    pub fn trace(a: &Mat) -> Rational {
        a.iter().enumerate().fold(Rational::zero(), |acc, (i, r)| acc + &r[i])
    }

    pub fn is_zero(a: &Mat) -> bool {
        a.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }

    /// Row-major flattening as a sparse vector keyed by `(row, col)`.
    pub fn flatten(a: &Mat) -> SparseVec<(usize, usize)> {
        let mut v = SparseVec::new();
        for (i, r) in a.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                v.add_term((i, j), x);
            }
        }
        v
    }

    /// `a * v` for a sparse coordinate vector.
    pub fn apply(a: &Mat, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            for (i, row) in a.iter().enumerate() {
                if !row[*j].is_zero() {
                    out.add_term(i, &(&row[*j] * c));
                }
            }
        }
        out
    }
}

/// Dense square matrix helpers used for unimodular degree changes.
pub mod intmat {
    use super::*;

    pub type IntMatrix = Vec<Vec<i64>>;

    pub fn det(m: &IntMatrix) -> Rational {
        let n = m.len();
        let mut a: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return Rational::zero() };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pv = a[col][col].clone();
            det *= &pv;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pv;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        det
    }

    pub fn is_unimodular(m: &IntMatrix) -> bool {
        let n = m.len();
        if n == 0 || m.iter().any(|r| r.len() != n) {
            return false;
        }
        det(m).abs().is_one()
    }

    /// Inverse of a unimodular integer matrix (again integral).
    pub fn inverse(m: &IntMatrix) -> Option<IntMatrix> {
        if !is_unimodular(m) {
            return None;
        }
        let n = m.len();
        let mut a: Vec<Vec<Rational>> = m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<Rational> = r.iter().map(|&x| int(x)).collect();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(p, col);
            let pv = a[col][col].clone();
            for c in 0..2 * n {
                a[col][c] = &a[col][c] / &pv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let sub = &f * &a[col][c];
                        a[r][c] -= sub;
                    }
                }
            }
        }
        let mut inv = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let q = &a[i][n + j];
                if !q.denom().is_one() {
                    return None;
                }
                inv[i][j] = i64::try_from(q.numer()).ok()?;
            }
        }
        Some(inv)
    }

    pub fn transpose(m: &IntMatrix) -> IntMatrix {
        let n = m.len();
        (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect()
    }

    /// `m * v`.
    pub fn apply(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
        m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn identity(n: usize) -> IntMatrix {
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(usize, i64)]) -> SparseVec<usize> {
        SparseVec::from_pairs(entries.iter().map(|&(k, c)| (k, int(c))))
    }

    #[test]
    fn identity_has_full_rank() {
        let m = ExactMatrix::with_columns(vec![0, 1], vec![v(&[(0, 1)]), v(&[(1, 1)])]);
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        assert!(r.kernel_basis.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let m = ExactMatrix::with_columns(vec![0, 1], vec![SparseVec::new(), SparseVec::new()]);
        let r = rref(&m);
        assert_eq!(r.rank, 0);
        assert_eq!(r.kernel_basis.len(), 2);
    }

    #[test]
    fn dependent_rows() {
        let m = ExactMatrix::with_columns(vec![0, 1], vec![v(&[(0, 1), (1, 1)]), v(&[(0, 2), (1, 2)])]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.kernel_basis, vec![v(&[(0, -1), (1, 1)])]);
        // (1,-1) up to sign
        assert!(span_contains(&r.kernel_basis, &v(&[(0, 1), (1, -1)])));
    }

    #[test]
    fn empty_matrix() {
        let m: ExactMatrix<usize> = ExactMatrix::from_rows(vec![]);
        let r = rref(&m);
        assert_eq!(r.rank, 0);
        assert!(r.kernel_basis.is_empty());
    }

    #[test]
    fn span_membership() {
        assert!(span_contains(&[v(&[(0, 1)])], &v(&[(0, 3)])));
        assert!(!span_contains(&[v(&[(0, 1)])], &v(&[(1, 1)])));
        assert!(span_contains(&[v(&[(0, 1), (1, 1)]), v(&[(0, 1), (1, -1)])], &v(&[(0, 2)])));
    }

    #[test]
    fn coordinates_recover_combination() {
        let mut e = Echelon::new();
        assert!(e.insert(v(&[(0, 1), (1, 1)])));
        assert!(e.insert(v(&[(0, 1), (1, -1)])));
        assert!(!e.insert(v(&[(0, 5), (1, 1)])));
        let c = e.coordinates(&v(&[(0, 2)])).unwrap();
        assert_eq!(c, v(&[(0, 1), (1, 1)]));
        assert!(e.coordinates(&v(&[(2, 1)])).is_none());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&rat(4, -6)), "-2/3");
    }

    #[test]
    fn unimodular_inverse() {
        let c = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let inv = intmat::inverse(&c).unwrap();
        assert_eq!(inv, vec![vec![1, -1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(intmat::inverse(&vec![vec![2, 0], vec![0, 1]]).is_none());
    }
}
