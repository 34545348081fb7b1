//! Exact integer linear algebra: arbitrary-precision matrices, Smith normal
//! form with transform tracking, Bareiss determinants, and lattice
//! unimodularity tests.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::LinalgError;

/// An integer vector of fixed length. Entries are arbitrary precision.
pub type IntVec = Vec<BigInt>;

/// Convenience constructor from machine integers.
pub fn int_vec(entries: &[i64]) -> IntVec {
    entries.iter().map(|&e| BigInt::from(e)).collect()
}

/// A dense matrix over Z with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[IntVec]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = IntMatrix::zero(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, e) in r.iter().enumerate() {
                m[(i, j)] = e.clone();
            }
        }
        m
    }

    pub fn from_columns(cols: &[IntVec], col_len: usize) -> Self {
        let mut m = IntMatrix::zero(col_len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), col_len);
            for (i, e) in c.iter().enumerate() {
                m[(i, j)] = e.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rs: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
        IntMatrix::from_rows(&rs)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> IntVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> IntVec {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &IntVec) -> IntVec {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &x[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
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

    /// row a -= q * row b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * &self[(b, j)];
            self[(a, j)] -= delta;
        }
    }

    /// col a -= q * col b
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * &self[(i, b)];
            self[(i, a)] -= delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form U * A * V = D with unimodular U, V and a divisibility
/// chain d_1 | d_2 | ... on the nonnegative diagonal of D.
pub struct SNFResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SNFResult {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        let k = self.d.rows().min(self.d.cols());
        (0..k).filter(|&i| !self.d[(i, i)].is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form by elimination with minimal-absolute-value pivoting.
pub fn smith_normal_form(a: &IntMatrix) -> SNFResult {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows());
    let mut v = IntMatrix::identity(a.cols());
    let k = a.rows().min(a.cols());

    for t in 0..k {
        loop {
            // Minimal nonzero entry of the trailing submatrix becomes the pivot.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows() {
                for j in t..d.cols() {
                    if !d[(i, j)].is_zero()
                        && pivot.is_none_or(|(pi, pj)| d[(i, j)].abs() < d[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // Trailing submatrix is zero; done with all remaining positions.
                return finish(u, d, v, t);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..d.rows() {
                if !d[(i, t)].is_zero() {
                    let q = div_nearest(&d[(i, t)], &d[(t, t)]);
                    d.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..d.cols() {
                if !d[(t, j)].is_zero() {
                    let q = div_nearest(&d[(t, j)], &d[(t, t)]);
                    d.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }

            // Enforce divisibility of the trailing block by the pivot.
            let mut fixed = true;
            'scan: for i in t + 1..d.rows() {
                for j in t + 1..d.cols() {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        // Fold row i into row t and restart the position.
                        let one = BigInt::from(-1);
                        d.row_sub(t, i, &one);
                        u.row_sub(t, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
    }
    finish(u, d, v, k)
}

fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix, upto: usize) -> SNFResult {
    // Normalize diagonal signs to nonnegative.
    for t in 0..upto {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SNFResult { u, d, v }
}

/// Quotient rounded to nearest, which keeps remainders small during SNF.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    // Adjust so |a - q*b| <= |b|/2.
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Exact determinant via Bareiss fraction-free elimination.
pub fn int_det(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant requires a square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for t in 0..n - 1 {
        if m[(t, t)].is_zero() {
            let Some(p) = (t + 1..n).find(|&i| !m[(i, t)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(t, p);
            sign = -sign;
        }
        for i in t + 1..n {
            for j in t + 1..n {
                let num = &m[(t, t)] * &m[(i, j)] - &m[(i, t)] * &m[(t, j)];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[(i, j)] = q;
            }
            m[(i, t)] = BigInt::zero();
        }
        prev = m[(t, t)].clone();
    }
    let det = m[(n - 1, n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// True iff the vectors span a rank-|vs| direct summand of Z^n, i.e. the SNF
/// diagonal of their column matrix is all ones.
pub fn is_unimodular_set_z(vs: &[IntVec]) -> bool {
    if vs.is_empty() {
        return true;
    }
    let n = vs[0].len();
    if vs.len() > n {
        return false;
    }
    let m = IntMatrix::from_columns(vs, n);
    let snf = smith_normal_form(&m);
    let diag = snf.diagonal();
    diag.len() == vs.len() && diag.iter().all(|d| d.is_one())
}

/// Integer dual basis: matrix S with <s_j, b_k> = delta_{jk}, i.e. the
/// (exactly integral) inverse transpose of a unimodular B.
pub fn int_dual_basis(basis: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    assert_eq!(basis.rows(), basis.cols(), "dual basis requires n x n");
    let n = basis.rows();
    let det = int_det(basis);
    if !det.abs().is_one() {
        return Err(LinalgError::NotUnimodular);
    }
    // Adjugate route: inv(B) = adj(B)/det with det = ±1, then transpose.
    let mut s = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = minor_matrix(basis, i, j);
            let mut c = int_det(&minor);
            if (i + j) % 2 == 1 {
                c = -c;
            }
            // adj(B)[j][i] = cofactor(i,j); inv = adj/det; S = inv^T,
            // so S[i][j] = inv[j][i] = cofactor(i,j)/det.
            s[(i, j)] = if det.is_one() { c } else { -c };
        }
    }
    Ok(s)
}

fn minor_matrix(a: &IntMatrix, skip_row: usize, skip_col: usize) -> IntMatrix {
    let n = a.rows();
    let mut m = IntMatrix::zero(n - 1, n - 1);
    let mut ri = 0;
    for i in 0..n {
        if i == skip_row {
            continue;
        }
        let mut cj = 0;
        for j in 0..n {
            if j == skip_col {
                continue;
            }
            m[(ri, cj)] = a[(i, j)].clone();
            cj += 1;
        }
        ri += 1;
    }
    m
}

/// Incremental unimodularity tracker for subset enumeration over Z.
///
/// Maintains the vectors pushed so far; `try_push` accepts a vector only if
/// the extended set still spans a direct summand.
#[derive(Clone)]
pub struct ZSpanTracker {
    vecs: Vec<IntVec>,
}

impl ZSpanTracker {
    pub fn new() -> Self {
        ZSpanTracker { vecs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.vecs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vecs.is_empty()
    }

    pub fn try_push(&mut self, v: &IntVec) -> bool {
        self.vecs.push(v.clone());
        if is_unimodular_set_z(&self.vecs) {
            true
        } else {
            self.vecs.pop();
            false
        }
    }

    pub fn pop(&mut self) {
        self.vecs.pop();
    }
}

impl Default for ZSpanTracker {
    fn default() -> Self {
        Self::new()
    }
}

/// Solve A x = b exactly over Z via SNF, returning None when no integer
/// solution exists.
pub fn int_solve(a: &IntMatrix, b: &IntVec) -> Option<IntVec> {
    assert_eq!(a.rows(), b.len());
    let snf = smith_normal_form(a);
    let y = snf.u.mul_vec(b);
    let k = a.rows().min(a.cols());
    let mut x = vec![BigInt::zero(); a.cols()];
    for (i, yi) in y.iter().enumerate() {
        if i < k && !snf.d[(i, i)].is_zero() {
            let (q, r) = yi.div_rem(&snf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            x[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(a: &IntMatrix) {
        let snf = smith_normal_form(a);
        assert_eq!(snf.u.mul(a).mul(&snf.v), snf.d, "U*A*V = D");
        assert!(int_det(&snf.u).abs().is_one(), "|det U| = 1");
        assert!(int_det(&snf.v).abs().is_one(), "|det V| = 1");
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            } else {
                assert!(w[1].is_zero(), "trailing zeros");
            }
        }
        for d in &diag {
            assert!(!d.is_negative());
        }
    }

    #[test]
    fn snf_identity() {
        let a = IntMatrix::identity(3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.d, IntMatrix::identity(3));
        check_snf(&a);
    }

    #[test]
    fn snf_diag_2_3() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        check_snf(&a);
    }

    #[test]
    fn snf_hand_example() {
        let a = IntMatrix::from_i64(&[&[1, 1], &[1, -1]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
        check_snf(&a);
    }

    #[test]
    fn det_examples() {
        assert_eq!(int_det(&IntMatrix::identity(4)), BigInt::one());
        assert_eq!(
            int_det(&IntMatrix::from_i64(&[&[1, 0], &[-1, -1]])),
            BigInt::from(-1)
        );
        assert_eq!(
            int_det(&IntMatrix::from_i64(&[&[1, 1], &[1, -1]])),
            BigInt::from(-2)
        );
    }

    #[test]
    fn unimodular_sets() {
        assert!(is_unimodular_set_z(&[int_vec(&[1, 0])]));
        assert!(!is_unimodular_set_z(&[int_vec(&[2, 0])]));
        assert!(!is_unimodular_set_z(&[int_vec(&[1, 1]), int_vec(&[1, -1])]));
        assert!(is_unimodular_set_z(&[]));
    }

    #[test]
    fn dual_basis_identity() {
        let s = int_dual_basis(&IntMatrix::identity(3)).unwrap();
        assert_eq!(s, IntMatrix::identity(3));
    }

    #[test]
    fn dual_basis_hand_example() {
        // Columns {(1,0),(1,1)} -> columns {(1,-1),(0,1)}.
        let b = IntMatrix::from_columns(&[int_vec(&[1, 0]), int_vec(&[1, 1])], 2);
        let s = int_dual_basis(&b).unwrap();
        assert_eq!(s.column(0), int_vec(&[1, -1]));
        assert_eq!(s.column(1), int_vec(&[0, 1]));
    }

    #[test]
    fn dual_basis_not_unimodular() {
        let b = IntMatrix::from_columns(&[int_vec(&[2, 0]), int_vec(&[0, 1])], 2);
        assert!(matches!(int_dual_basis(&b), Err(LinalgError::NotUnimodular)));
    }

    #[test]
    fn solve_roundtrip() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let b = int_vec(&[3, 2]);
        let x = int_solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn solve_no_integer_solution() {
        let a = IntMatrix::from_i64(&[&[2]]);
        assert!(int_solve(&a, &int_vec(&[1])).is_none());
    }
}
