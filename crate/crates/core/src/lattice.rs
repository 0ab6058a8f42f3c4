//! Periodic `Z x Z` matrices and compositions.
//!
//! An [`AffineMatrix`] stores one representative per periodicity class
//! `(i + kn, j + kn)`: the one whose row lies in `1..=n`. Columns are
//! unbounded integers. Zero entries are never stored.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue class of `i` modulo `n`, as an index in `1..=n`.
pub fn residue(i: i64, n: usize) -> usize {
    ((i - 1).rem_euclid(n as i64) + 1) as usize
}

/// Shifts `(i, j)` along its periodicity class so that the row lands in `1..=n`.
pub fn canonicalize(i: i64, j: i64, n: usize) -> (i64, i64) {
    assert!(n >= 2, "period must be at least 2");
    let row = residue(i, n) as i64;
    (row, j + (row - i))
}

/// A vector of `n` nonnegative parts, read periodically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Composition { parts }
    }

    pub fn zero(n: usize) -> Self {
        Composition { parts: vec![0; n] }
    }

    /// The unit vector `e_i` (periodic in `i`).
    pub fn unit(i: i64, n: usize) -> Self {
        let mut parts = vec![0; n];
        parts[residue(i, n) - 1] = 1;
        Composition { parts }
    }

    /// Builds a composition from signed parts, or `None` if some part is negative.
    pub fn from_weights(weights: &[i64]) -> Option<Self> {
        weights
            .iter()
            .map(|&w| u64::try_from(w).ok())
            .collect::<Option<Vec<_>>>()
            .map(Composition::new)
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Part at periodic index `i`.
    pub fn get(&self, i: i64) -> u64 {
        self.parts[residue(i, self.parts.len()) - 1]
    }

    pub fn weights(&self) -> Vec<i64> {
        self.parts.iter().map(|&p| p as i64).collect()
    }

    pub fn checked_sub(&self, other: &Composition) -> Option<Composition> {
        assert_eq!(self.len(), other.len());
        self.parts
            .iter()
            .zip(&other.parts)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Composition::new)
    }

    pub fn add(&self, other: &Composition) -> Composition {
        assert_eq!(self.len(), other.len());
        Composition::new(self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All `n`-part compositions of `m`, largest first part first.
///
/// `(2, 2)` yields `(2,0), (1,1), (0,2)`. Negative `m` yields nothing.
pub fn enumerate_compositions(n: usize, m: i64) -> Vec<Composition> {
    let mut out = Vec::new();
    if m < 0 || n == 0 {
        return out;
    }
    let mut parts = vec![0u64; n];
    fill_compositions(&mut parts, 0, m as u64, &mut out);
    out
}

fn fill_compositions(parts: &mut Vec<u64>, pos: usize, left: u64, out: &mut Vec<Composition>) {
    if pos + 1 == parts.len() {
        parts[pos] = left;
        out.push(Composition::new(parts.clone()));
        return;
    }
    for v in (0..=left).rev() {
        parts[pos] = v;
        fill_compositions(parts, pos + 1, left - v, out);
    }
}

/// Which sub-matrix [`AffineMatrix::slice`] extracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    /// `A⁺_{i,j}`: row `i`, columns `≡ j (mod n)` strictly right of the diagonal.
    UpperCell { row: i64, col: i64 },
    /// `A⁻_{j,i}`: column `i`, rows `≡ j (mod n)` strictly below the diagonal.
    LowerCell { row: i64, col: i64 },
    /// `A⁺_j`: all strictly upper entries whose column is `≡ j`.
    UpperColumn(i64),
    /// `A⁻_j`: all strictly lower entries whose row is `≡ j`.
    LowerRow(i64),
}

/// A `Z`-periodic, finitely supported matrix with entries in `N`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineMatrix {
    n: usize,
    entries: BTreeMap<(i64, i64), u64>,
}

impl AffineMatrix {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 2, "period must be at least 2");
        AffineMatrix {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// The unit matrix `E_{i,j}` with a single 1 on the class of `(i, j)`.
    pub fn unit(i: i64, j: i64, n: usize) -> Self {
        let mut m = AffineMatrix::zero(n);
        m.entries.insert(canonicalize(i, j, n), 1);
        m
    }

    pub fn diag(lambda: &Composition) -> Self {
        let mut m = AffineMatrix::zero(lambda.len());
        for (k, &p) in lambda.parts().iter().enumerate() {
            if p > 0 {
                let i = k as i64 + 1;
                m.entries.insert((i, i), p);
            }
        }
        m
    }

    /// Sums the given entries into a matrix; positions are canonicalized and zeros dropped.
    pub fn from_entries<I>(n: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64, u64)>,
    {
        let mut m = AffineMatrix::zero(n);
        for (i, j, a) in entries {
            if a > 0 {
                *m.entries.entry(canonicalize(i, j, n)).or_insert(0) += a;
            }
        }
        m
    }

    /// Strict constructor for the interchange form: rows in `1..=n`, positive
    /// entries, sorted and without repeats.
    pub fn try_from_sorted_entries(n: usize, entries: &[(i64, i64, u64)]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPeriod(n));
        }
        let mut m = AffineMatrix::zero(n);
        let mut prev: Option<(i64, i64)> = None;
        for &(i, j, a) in entries {
            if i < 1 || i > n as i64 {
                return Err(Error::RowOutOfRange { i, j, n });
            }
            if a == 0 {
                return Err(Error::ZeroEntry { i, j });
            }
            if let Some(p) = prev {
                if p == (i, j) {
                    return Err(Error::DuplicateEntry { i, j });
                }
                if p > (i, j) {
                    return Err(Error::UnsortedEntries);
                }
            }
            prev = Some((i, j));
            m.entries.insert((i, j), a);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry at any position `(i, j)`, read through periodicity.
    pub fn get(&self, i: i64, j: i64) -> u64 {
        self.entries
            .get(&canonicalize(i, j, self.n))
            .copied()
            .unwrap_or(0)
    }

    /// Stored entries `(i, j, a)` in `(i, j)` order, `i` in `1..=n`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &a)| (i, j, a))
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Entries of row `i` (any integer), reported with columns relative to that row.
    pub fn row(&self, i: i64) -> impl Iterator<Item = (i64, u64)> + '_ {
        let (row, _) = canonicalize(i, 0, self.n);
        let shift = row - i;
        self.entries
            .range((row, i64::MIN)..=(row, i64::MAX))
            .map(move |(&(_, j), &a)| (j - shift, a))
    }

    pub fn add_unit(&self, i: i64, j: i64) -> Self {
        let mut m = self.clone();
        *m.entries.entry(canonicalize(i, j, self.n)).or_insert(0) += 1;
        m
    }

    /// Subtracts `E_{i,j}`; `None` stands for the zero symbol produced by a
    /// negative entry.
    pub fn sub_unit(&self, i: i64, j: i64) -> Option<Self> {
        let key = canonicalize(i, j, self.n);
        let mut m = self.clone();
        match m.entries.get_mut(&key) {
            None => None,
            Some(a) if *a == 1 => {
                m.entries.remove(&key);
                Some(m)
            }
            Some(a) => {
                *a -= 1;
                Some(m)
            }
        }
    }

    pub fn add(&self, other: &AffineMatrix) -> Self {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (&k, &a) in &other.entries {
            *m.entries.entry(k).or_insert(0) += a;
        }
        m
    }

    pub fn checked_sub(&self, other: &AffineMatrix) -> Option<Self> {
        assert_eq!(self.n, other.n);
        let mut m = self.clone();
        for (&k, &a) in &other.entries {
            let cur = m.entries.get(&k).copied().unwrap_or(0);
            match cur.cmp(&a) {
                std::cmp::Ordering::Less => return None,
                std::cmp::Ordering::Equal => {
                    m.entries.remove(&k);
                }
                std::cmp::Ordering::Greater => {
                    m.entries.insert(k, cur - a);
                }
            }
        }
        Some(m)
    }

    /// Total weight `σ(A)`.
    pub fn sigma(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Periodic row sums `ro(A)`.
    pub fn row_sum(&self) -> Composition {
        let mut parts = vec![0; self.n];
        for (&(i, _), &a) in &self.entries {
            parts[i as usize - 1] += a;
        }
        Composition::new(parts)
    }

    /// Periodic column sums `co(A)`.
    pub fn col_sum(&self) -> Composition {
        let mut parts = vec![0; self.n];
        for (&(_, j), &a) in &self.entries {
            parts[residue(j, self.n) - 1] += a;
        }
        Composition::new(parts)
    }

    /// The vector `σ_i(A) = a_{i,i} + Σ_{j<i} (a_{i,j} + a_{j,i})`.
    ///
    /// An entry strictly above the diagonal counts towards its column class,
    /// every other entry towards its row.
    pub fn sigma_vec(&self) -> Composition {
        let mut parts = vec![0; self.n];
        for (&(i, j), &a) in &self.entries {
            let idx = if i < j { residue(j, self.n) } else { i as usize };
            parts[idx - 1] += a;
        }
        Composition::new(parts)
    }

    /// Diagonal part as a composition.
    pub fn diagonal(&self) -> Composition {
        let mut parts = vec![0; self.n];
        for (&(i, j), &a) in &self.entries {
            if i == j {
                parts[i as usize - 1] = a;
            }
        }
        Composition::new(parts)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i == j)
    }

    /// Whether every diagonal entry is zero (`A ∈ Θ^±`).
    pub fn is_diagonal_free(&self) -> bool {
        self.entries.keys().all(|&(i, j)| i != j)
    }

    pub fn off_diagonal(&self) -> Self {
        self.filtered(|i, j| i != j)
    }

    pub fn upper(&self) -> Self {
        self.filtered(|i, j| i < j)
    }

    pub fn lower(&self) -> Self {
        self.filtered(|i, j| i > j)
    }

    /// `A = A⁺ + diag(D) + A⁻`.
    pub fn split_pm(&self) -> (AffineMatrix, Composition, AffineMatrix) {
        (self.upper(), self.diagonal(), self.lower())
    }

    pub fn slice(&self, which: Slice) -> Self {
        let n = self.n;
        match which {
            Slice::UpperCell { row, col } => self.filtered(|i, j| {
                i < j && i as usize == residue(row, n) && residue(j, n) == residue(col, n)
            }),
            Slice::LowerCell { row, col } => self.filtered(|i, j| {
                i > j && i as usize == residue(row, n) && residue(j, n) == residue(col, n)
            }),
            Slice::UpperColumn(col) => {
                self.filtered(|i, j| i < j && residue(j, n) == residue(col, n))
            }
            Slice::LowerRow(row) => {
                self.filtered(|i, j| i > j && i as usize == residue(row, n))
            }
        }
    }

    /// Transpose `(i, j) ↦ (j, i)`, re-canonicalized.
    pub fn transpose(&self) -> Self {
        AffineMatrix::from_entries(self.n, self.entries().map(|(i, j, a)| (j, i, a)))
    }

    fn filtered(&self, keep: impl Fn(i64, i64) -> bool) -> Self {
        AffineMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .filter(|(&(i, j), _)| keep(i, j))
                .map(|(&k, &a)| (k, a))
                .collect(),
        }
    }
}

impl fmt::Debug for AffineMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AffineMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, j, a)) in self.entries().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "E{i},{j}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: i64, j: i64, n: usize) -> AffineMatrix {
        AffineMatrix::unit(i, j, n)
    }

    fn comp(p: &[u64]) -> Composition {
        Composition::new(p.to_vec())
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(3, 5, 2), (1, 3));
        assert_eq!(canonicalize(0, 0, 2), (2, 2));
        assert_eq!(canonicalize(1, 7, 3), (1, 7));
        assert_eq!(canonicalize(-4, -1, 3), (2, 5));
    }

    #[test]
    fn unit_matrix_folds_periodic_copies() {
        assert_eq!(e(1, 2, 2).entries().collect::<Vec<_>>(), vec![(1, 2, 1)]);
        assert_eq!(e(3, 4, 2), e(1, 2, 2));
        assert_eq!(e(2, 2, 2), AffineMatrix::diag(&comp(&[0, 1])));
    }

    #[test]
    fn row_and_column_sums() {
        let a = e(1, 2, 2).add(&e(2, 1, 2));
        assert_eq!(a.row_sum(), comp(&[1, 1]));
        assert_eq!(a.col_sum(), comp(&[1, 1]));
        let b = e(1, 5, 2);
        assert_eq!(b.row_sum(), comp(&[1, 0]));
        assert_eq!(b.col_sum(), comp(&[1, 0]));
        let d = AffineMatrix::diag(&comp(&[2, 3]));
        assert_eq!(d.row_sum(), comp(&[2, 3]));
        assert_eq!(d.col_sum(), comp(&[2, 3]));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(AffineMatrix::zero(2).sigma(), 0);
        assert_eq!(e(1, 2, 2).add(&AffineMatrix::diag(&comp(&[1, 0]))).sigma(), 2);
        assert_eq!(AffineMatrix::from_entries(2, [(1, 3, 2)]).sigma(), 2);
    }

    #[test]
    fn sigma_vec_examples() {
        assert_eq!(e(1, 2, 2).sigma_vec(), comp(&[0, 1]));
        assert_eq!(e(1, 3, 2).sigma_vec(), comp(&[1, 0]));
        assert_eq!(AffineMatrix::diag(&comp(&[2, 1])).sigma_vec(), comp(&[2, 1]));
        // lower entry counts at its row
        assert_eq!(e(2, 1, 2).sigma_vec(), comp(&[0, 1]));
        assert_eq!(e(1, -1, 2).sigma_vec(), comp(&[1, 0]));
    }

    #[test]
    fn add_and_sub_unit() {
        let d11 = AffineMatrix::diag(&comp(&[1, 1]));
        let d10 = AffineMatrix::diag(&comp(&[1, 0]));
        assert_eq!(d11.sub_unit(2, 2), Some(d10.clone()));
        assert_eq!(d10.sub_unit(2, 2), None);
        assert_eq!(
            e(1, 2, 2).add_unit(3, 4),
            AffineMatrix::from_entries(2, [(1, 2, 2)])
        );
    }

    #[test]
    fn split_pm_examples() {
        let a = e(1, 2, 2).add(&e(2, 1, 2)).add(&AffineMatrix::diag(&comp(&[1, 1])));
        assert_eq!(a.split_pm(), (e(1, 2, 2), comp(&[1, 1]), e(2, 1, 2)));
        assert_eq!(
            e(1, 3, 2).split_pm(),
            (e(1, 3, 2), comp(&[0, 0]), AffineMatrix::zero(2))
        );
        assert_eq!(
            e(1, -1, 2).split_pm(),
            (AffineMatrix::zero(2), comp(&[0, 0]), e(1, -1, 2))
        );
    }

    #[test]
    fn slice_examples() {
        let a = e(1, 2, 2).add(&e(1, 4, 2));
        assert_eq!(a.slice(Slice::UpperCell { row: 1, col: 2 }), a);
        assert!(AffineMatrix::zero(2).slice(Slice::UpperColumn(1)).is_zero());
        let b = e(1, 2, 2).add(&e(2, 3, 2));
        assert_eq!(b.slice(Slice::UpperColumn(1)), e(2, 3, 2));
        // A⁻_{j,i}: column 1, rows ≡ 2 below the diagonal; (2,1) and (4,1) = (2,-1)
        let c = e(2, 1, 3).add(&e(2, -1, 3)).add(&e(3, 1, 3));
        assert_eq!(c.slice(Slice::LowerCell { row: 2, col: 1 }), e(2, 1, 3));
        let c2 = e(2, 1, 2).add(&e(2, -1, 2)).add(&e(1, 0, 2));
        assert_eq!(
            c2.slice(Slice::LowerCell { row: 2, col: 1 }),
            e(2, 1, 2).add(&e(2, -1, 2))
        );
        assert_eq!(c2.slice(Slice::LowerRow(1)), e(1, 0, 2));
    }

    #[test]
    fn enumerate_compositions_examples() {
        assert_eq!(enumerate_compositions(2, 1), vec![comp(&[1, 0]), comp(&[0, 1])]);
        assert_eq!(
            enumerate_compositions(2, 2),
            vec![comp(&[2, 0]), comp(&[1, 1]), comp(&[0, 2])]
        );
        assert_eq!(enumerate_compositions(3, 0), vec![comp(&[0, 0, 0])]);
        assert!(enumerate_compositions(2, -1).is_empty());
    }

    #[test]
    fn strict_constructor_rejects_bad_input() {
        assert!(AffineMatrix::try_from_sorted_entries(2, &[(3, 1, 1)]).is_err());
        assert!(AffineMatrix::try_from_sorted_entries(2, &[(1, 1, 0)]).is_err());
        assert!(AffineMatrix::try_from_sorted_entries(2, &[(1, 2, 1), (1, 1, 1)]).is_err());
        assert!(AffineMatrix::try_from_sorted_entries(1, &[]).is_err());
    }
}
