//! Bit-packed linear algebra over GF(2).
//!
//! Rows are packed into `u64` words so elimination is word-parallel XOR.
//! Boundary matrices of the universal complexes at n = 4, 5 have thousands
//! of columns, which is why everything here works on packed words.

use std::cmp::Ordering;
use std::fmt;

use crate::error::LinalgError;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2) of fixed length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Vec {
    len: usize,
    words: Vec<u64>,
}

impl GF2Vec {
    pub fn zero(len: usize) -> Self {
        GF2Vec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Build from a slice of 0/1 coordinates.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = GF2Vec::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &GF2Vec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &GF2Vec) -> GF2Vec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Dot product mod 2.
    pub fn dot(&self, other: &GF2Vec) -> bool {
        assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of set coordinates.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

impl fmt::Debug for GF2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter_bits() {
            write!(f, "{}", if b { 1 } else { 0 })?;
        }
        Ok(())
    }
}

// Lexicographic on the coordinate sequence, coordinate 0 first, 0 < 1.
impl Ord for GF2Vec {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            let d = a ^ b;
            if d != 0 {
                let pos = d.trailing_zeros();
                return if (a >> pos) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for GF2Vec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A dense matrix over GF(2), rows bit-packed.
#[derive(Clone, PartialEq, Eq)]
pub struct GF2Matrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl GF2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        GF2Matrix {
            rows,
            cols,
            words_per_row: wpr,
            data: vec![0; rows * wpr],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GF2Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[GF2Vec]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = GF2Matrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            let base = i * m.words_per_row;
            m.data[base..base + m.words_per_row].copy_from_slice(&r.words);
        }
        m
    }

    pub fn from_columns(cols: &[GF2Vec], col_len: usize) -> Self {
        let mut m = GF2Matrix::zero(col_len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), col_len);
            for i in 0..col_len {
                if c.get(i) {
                    m.set(i, j, true);
                }
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

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        (self.data[i * self.words_per_row + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let idx = i * self.words_per_row + j / WORD_BITS;
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row(&self, i: usize) -> GF2Vec {
        let base = i * self.words_per_row;
        GF2Vec {
            len: self.cols,
            words: self.data[base..base + self.words_per_row].to_vec(),
        }
    }

    pub fn column(&self, j: usize) -> GF2Vec {
        let mut c = GF2Vec::zero(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                c.set(i, true);
            }
        }
        c
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = GF2Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            let base = i * self.words_per_row;
            for w in 0..self.words_per_row {
                let mut word = self.data[base + w];
                while word != 0 {
                    let b = word.trailing_zeros() as usize;
                    t.set(w * WORD_BITS + b, i, true);
                    word &= word - 1;
                }
            }
        }
        t
    }

    fn xor_row_into(&mut self, dst: usize, src: usize) {
        let wpr = self.words_per_row;
        let (a, b) = (dst * wpr, src * wpr);
        for k in 0..wpr {
            let v = self.data[b + k];
            self.data[a + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let wpr = self.words_per_row;
        for k in 0..wpr {
            self.data.swap(a * wpr + k, b * wpr + k);
        }
    }

    /// In-place row echelon reduction. Returns the pivot columns in order.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut pivot = None;
            for i in r..self.rows {
                if self.get(i, j) {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            self.swap_rows(r, p);
            for i in 0..self.rows {
                if i != r && self.get(i, j) {
                    self.xor_row_into(i, r);
                }
            }
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        // Reduce the smaller orientation; rank is transpose-invariant.
        if self.rows <= self.cols {
            self.clone().row_reduce().len()
        } else {
            self.transpose().row_reduce().len()
        }
    }

    /// Basis of the right kernel {x : Mx = 0}.
    pub fn kernel_basis(&self) -> Vec<GF2Vec> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut x = GF2Vec::zero(self.cols);
            x.set(free, true);
            for (r, &pj) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    x.set(pj, true);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// Some solution of Mx = b, or None when inconsistent.
    pub fn solve(&self, b: &GF2Vec) -> Result<Option<GF2Vec>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        // Augment with b as an extra column.
        let mut aug = GF2Matrix::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            let base_src = i * self.words_per_row;
            let base_dst = i * aug.words_per_row;
            aug.data[base_dst..base_dst + self.words_per_row]
                .copy_from_slice(&self.data[base_src..base_src + self.words_per_row]);
            if b.get(i) {
                aug.set(i, self.cols, true);
            }
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = GF2Vec::zero(self.cols);
        for (r, &pj) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                x.set(pj, true);
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or SingularMatrix.
    pub fn inverse(&self) -> Result<GF2Matrix, LinalgError> {
        assert_eq!(self.rows, self.cols, "inverse requires a square matrix");
        let n = self.rows;
        let mut aug = GF2Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) {
                    aug.set(i, j, true);
                }
            }
            aug.set(i, n + i, true);
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(k, &p)| p != k) {
            return Err(LinalgError::SingularMatrix);
        }
        let mut inv = GF2Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                if aug.get(i, n + j) {
                    inv.set(i, j, true);
                }
            }
        }
        Ok(inv)
    }

    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = GF2Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    out.xor_row_into_from(i, other, k);
                }
            }
        }
        out
    }

    fn xor_row_into_from(&mut self, dst: usize, other: &GF2Matrix, src: usize) {
        let wpr = self.words_per_row;
        for w in 0..wpr {
            self.data[dst * wpr + w] ^= other.data[src * other.words_per_row + w];
        }
    }

    pub fn mul_vec(&self, x: &GF2Vec) -> GF2Vec {
        assert_eq!(self.cols, x.len());
        let mut out = GF2Vec::zero(self.rows);
        for i in 0..self.rows {
            if self.row(i).dot(x) {
                out.set(i, true);
            }
        }
        out
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Rank over GF(2).
pub fn gf2_rank(m: &GF2Matrix) -> usize {
    m.rank()
}

/// Basis of the right kernel of `m`.
pub fn gf2_kernel_basis(m: &GF2Matrix) -> Vec<GF2Vec> {
    m.kernel_basis()
}

/// Some solution of Mx = b, if one exists.
pub fn gf2_solve(m: &GF2Matrix, b: &GF2Vec) -> Result<Option<GF2Vec>, LinalgError> {
    m.solve(b)
}

/// Dual basis of an invertible column-basis matrix: the matrix S with
/// columns s_j such that <s_j, b_k> = delta_{jk}, i.e. the inverse transpose.
pub fn gf2_dual_basis(basis: &GF2Matrix) -> Result<GF2Matrix, LinalgError> {
    assert_eq!(basis.rows(), basis.cols(), "dual basis requires n x n");
    Ok(basis.inverse()?.transpose())
}

/// True iff the given vectors are linearly independent over GF(2).
pub fn is_independent_gf2(vs: &[GF2Vec]) -> bool {
    if vs.is_empty() {
        return true;
    }
    let n = vs[0].len();
    if vs.len() > n {
        return false;
    }
    GF2Matrix::from_rows(vs).rank() == vs.len()
}

/// Incremental GF(2) independence tracker for subset enumeration.
///
/// Keeps a reduced basis of the vectors pushed so far; `try_push` refuses
/// vectors in the current span.
#[derive(Clone)]
pub struct GF2SpanTracker {
    reduced: Vec<GF2Vec>,
}

impl GF2SpanTracker {
    pub fn new() -> Self {
        GF2SpanTracker { reduced: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced.is_empty()
    }

    /// Adds `v` if it is independent of the tracked span; returns false otherwise.
    pub fn try_push(&mut self, v: &GF2Vec) -> bool {
        let mut w = v.clone();
        for r in &self.reduced {
            let lead = r.support()[0];
            if w.get(lead) {
                w.xor_assign(r);
            }
        }
        if w.is_zero() {
            return false;
        }
        self.reduced.push(w);
        // Keep rows sorted by leading index so reduction stays cheap.
        self.reduced.sort_by_key(|r| r.support()[0]);
        true
    }
}

impl Default for GF2SpanTracker {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u8]) -> GF2Vec {
        GF2Vec::from_bits(bits)
    }

    #[test]
    fn rank_identity() {
        assert_eq!(gf2_rank(&GF2Matrix::identity(3)), 3);
    }

    #[test]
    fn rank_dependent_rows() {
        // 110 ^ 011 = 101, so the three rows have rank 2.
        let m = GF2Matrix::from_rows(&[v(&[1, 1, 0]), v(&[0, 1, 1]), v(&[1, 0, 1])]);
        assert_eq!(gf2_rank(&m), 2);
    }

    #[test]
    fn rank_zero() {
        assert_eq!(gf2_rank(&GF2Matrix::zero(4, 4)), 0);
    }

    #[test]
    fn kernel_of_identity_empty() {
        assert!(gf2_kernel_basis(&GF2Matrix::identity(3)).is_empty());
    }

    #[test]
    fn kernel_of_sum_row() {
        let m = GF2Matrix::from_rows(&[v(&[1, 1])]);
        let basis = gf2_kernel_basis(&m);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], v(&[1, 1]));
    }

    #[test]
    fn solve_identity() {
        let b = v(&[1, 0, 1]);
        let x = gf2_solve(&GF2Matrix::identity(3), &b).unwrap().unwrap();
        assert_eq!(x, b);
    }

    #[test]
    fn solve_inconsistent() {
        let m = GF2Matrix::zero(2, 2);
        assert!(gf2_solve(&m, &v(&[1, 0])).unwrap().is_none());
    }

    #[test]
    fn solve_underdetermined_verifies() {
        let m = GF2Matrix::from_rows(&[v(&[1, 1])]);
        let b = v(&[1]);
        let x = gf2_solve(&m, &b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = GF2Matrix::identity(2);
        assert!(gf2_solve(&m, &v(&[1, 0, 0])).is_err());
    }

    #[test]
    fn dual_basis_identity() {
        let d = gf2_dual_basis(&GF2Matrix::identity(3)).unwrap();
        assert_eq!(d, GF2Matrix::identity(3));
    }

    #[test]
    fn dual_basis_hand_example() {
        // Columns {(1,0),(1,1)} -> columns {(1,1),(0,1)}.
        let b = GF2Matrix::from_columns(&[v(&[1, 0]), v(&[1, 1])], 2);
        let s = gf2_dual_basis(&b).unwrap();
        assert_eq!(s.column(0), v(&[1, 1]));
        assert_eq!(s.column(1), v(&[0, 1]));
    }

    #[test]
    fn dual_basis_singular() {
        let b = GF2Matrix::from_columns(&[v(&[1, 0]), v(&[1, 0])], 2);
        assert!(matches!(gf2_dual_basis(&b), Err(LinalgError::SingularMatrix)));
    }

    #[test]
    fn independence_cases() {
        let e1 = v(&[1, 0]);
        let e2 = v(&[0, 1]);
        assert!(is_independent_gf2(&[e1.clone(), e2.clone()]));
        assert!(!is_independent_gf2(&[e1.clone(), e2.clone(), e1.xor(&e2)]));
        assert!(is_independent_gf2(&[]));
    }

    #[test]
    fn lex_order_matches_coordinates() {
        assert!(v(&[0, 1]) < v(&[1, 0]));
        assert!(v(&[1, 0]) < v(&[1, 1]));
        assert!(v(&[0, 0, 1]) < v(&[0, 1, 0]));
    }

    #[test]
    fn span_tracker_rejects_dependent() {
        let mut t = GF2SpanTracker::new();
        assert!(t.try_push(&v(&[1, 0])));
        assert!(t.try_push(&v(&[0, 1])));
        assert!(!t.try_push(&v(&[1, 1])));
        assert_eq!(t.len(), 2);
    }
}
