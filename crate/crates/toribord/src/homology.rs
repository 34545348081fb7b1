//! Chain complexes of simplicial complexes with augmentation, reduced
//! homology over GF(2) and over Z, and cycle-space manipulation.
//!
//! The convention is reduced (augmented) homology throughout: the boundary
//! in degree 0 is the augmentation map sending every vertex to 1. Orientation
//! comes from the global vertex order of the complex, with sign (-1)^i on
//! deleting the i-th vertex of a sorted tuple.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{Ring, SimplicialComplex};
use crate::error::ChainError;
use crate::linalg::{
    gf2_solve, int_solve, smith_normal_form, GF2Matrix, GF2Vec, IntMatrix, IntVec,
};

/// A GF(2) chain of one dimension: the set of simplex ids with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Chain {
    pub dim: usize,
    pub coeffs: BTreeSet<usize>,
}

impl GF2Chain {
    pub fn zero(dim: usize) -> Self {
        GF2Chain {
            dim,
            coeffs: BTreeSet::new(),
        }
    }

    pub fn from_ids(dim: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut c = GF2Chain::zero(dim);
        for id in ids {
            c.toggle(id);
        }
        c
    }

    pub fn toggle(&mut self, id: usize) {
        if !self.coeffs.remove(&id) {
            self.coeffs.insert(id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &GF2Chain) -> GF2Chain {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for &id in &other.coeffs {
            out.toggle(id);
        }
        out
    }

    fn to_vec(&self, len: usize) -> GF2Vec {
        let mut v = GF2Vec::zero(len);
        for &id in &self.coeffs {
            v.set(id, true);
        }
        v
    }
}

/// An integer chain of one dimension; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntChain {
    pub dim: usize,
    pub coeffs: BTreeMap<usize, BigInt>,
}

impl IntChain {
    pub fn zero(dim: usize) -> Self {
        IntChain {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut c = IntChain::zero(dim);
        for (id, coeff) in terms {
            c.add_term(id, coeff);
        }
        c
    }

    pub fn add_term(&mut self, id: usize, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(id).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&id);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &IntChain) -> IntChain {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&id, c) in &other.coeffs {
            out.add_term(id, c.clone());
        }
        out
    }

    fn to_vec(&self, len: usize) -> IntVec {
        let mut v = vec![BigInt::zero(); len];
        for (&id, c) in &self.coeffs {
            v[id] = c.clone();
        }
        v
    }
}

/// Reduced homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySummary {
    pub dim: usize,
    pub ring: Ring,
    /// GF(2): the dimension as a Z_2-vector space. Z: the Betti number.
    pub rank: usize,
    /// Z only: invariant factors > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl HomologySummary {
    pub fn display(&self) -> String {
        match self.ring {
            Ring::GF2 => format!("H_{} = {}", self.dim, self.rank),
            Ring::Z => {
                if self.rank == 0 && self.torsion.is_empty() {
                    return format!("H_{} = 0", self.dim);
                }
                let mut parts = Vec::new();
                if self.rank > 0 {
                    parts.push(format!("Z^{}", self.rank));
                }
                for t in &self.torsion {
                    parts.push(format!("Z/{t}"));
                }
                format!("H_{} = {}", self.dim, parts.join(" (+) "))
            }
        }
    }
}

/// The m-th boundary matrix over GF(2). Rows are (m-1)-simplices; for m = 0
/// the single row is the augmentation.
pub fn boundary_matrix_gf2(k: &SimplicialComplex, m: usize) -> GF2Matrix {
    let cols = k.simplex_count(m);
    if m == 0 {
        let mut b = GF2Matrix::zero(1, cols);
        for j in 0..cols {
            b.set(0, j, true);
        }
        return b;
    }
    let rows = k.simplex_count(m - 1);
    let mut b = GF2Matrix::zero(rows, cols);
    for (j, s) in k.simplices(m).iter().enumerate() {
        for skip in 0..s.len() {
            let mut face = s.clone();
            face.remove(skip);
            let i = k
                .simplex_index(m - 1, &face)
                .expect("face of a stored simplex must be stored");
            b.set(i, j, true);
        }
    }
    b
}

/// The m-th boundary matrix over Z with alternating signs from the global
/// vertex order.
pub fn boundary_matrix_z(k: &SimplicialComplex, m: usize) -> IntMatrix {
    let cols = k.simplex_count(m);
    if m == 0 {
        let mut b = IntMatrix::zero(1, cols);
        for j in 0..cols {
            b[(0, j)] = BigInt::one();
        }
        return b;
    }
    let rows = k.simplex_count(m - 1);
    let mut b = IntMatrix::zero(rows, cols);
    for (j, s) in k.simplices(m).iter().enumerate() {
        for skip in 0..s.len() {
            let mut face = s.clone();
            face.remove(skip);
            let i = k
                .simplex_index(m - 1, &face)
                .expect("face of a stored simplex must be stored");
            let sign = if skip % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            b[(i, j)] = sign;
        }
    }
    b
}

/// Reduced homology over GF(2): dim ker d_m - rank d_{m+1}.
pub fn reduced_homology_gf2(k: &SimplicialComplex, m: usize) -> HomologySummary {
    let cols = k.simplex_count(m);
    if cols == 0 {
        return HomologySummary {
            dim: m,
            ring: Ring::GF2,
            rank: 0,
            torsion: Vec::new(),
        };
    }
    let dm = boundary_matrix_gf2(k, m);
    let kernel_dim = cols - dm.rank();
    let rank_next = if k.simplex_count(m + 1) > 0 {
        boundary_matrix_gf2(k, m + 1).rank()
    } else {
        0
    };
    HomologySummary {
        dim: m,
        ring: Ring::GF2,
        rank: kernel_dim - rank_next,
        torsion: Vec::new(),
    }
}

/// Reduced homology over Z via Smith normal form of the two boundary maps.
pub fn reduced_homology_z(k: &SimplicialComplex, m: usize) -> HomologySummary {
    let cols = k.simplex_count(m);
    if cols == 0 {
        return HomologySummary {
            dim: m,
            ring: Ring::Z,
            rank: 0,
            torsion: Vec::new(),
        };
    }
    let dm = boundary_matrix_z(k, m);
    let nullity = cols - smith_normal_form(&dm).rank();
    let (rank_next, torsion) = if k.simplex_count(m + 1) > 0 {
        let snf = smith_normal_form(&boundary_matrix_z(k, m + 1));
        let diag = snf.diagonal();
        let torsion: Vec<BigInt> = diag
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        (snf.rank(), torsion)
    } else {
        (0, Vec::new())
    };
    HomologySummary {
        dim: m,
        ring: Ring::Z,
        rank: nullity - rank_next,
        torsion,
    }
}

/// Apply the boundary operator to a GF(2) chain.
pub fn boundary_gf2(k: &SimplicialComplex, z: &GF2Chain) -> GF2Chain {
    let m = z.dim;
    if m == 0 {
        // Augmentation: value lives in a rank-1 space; encode it as a chain
        // on a single virtual cell with id 0.
        let mut out = GF2Chain::zero(0);
        if z.coeffs.len() % 2 == 1 {
            out.coeffs.insert(0);
        }
        return out;
    }
    let mut out = GF2Chain::zero(m - 1);
    for &id in &z.coeffs {
        let s = &k.simplices(m)[id];
        for skip in 0..s.len() {
            let mut face = s.clone();
            face.remove(skip);
            let i = k.simplex_index(m - 1, &face).expect("closed complex");
            out.toggle(i);
        }
    }
    out
}

/// Apply the boundary operator to an integer chain.
pub fn boundary_z(k: &SimplicialComplex, z: &IntChain) -> IntChain {
    let m = z.dim;
    if m == 0 {
        let mut out = IntChain::zero(0);
        let total: BigInt = z.coeffs.values().sum();
        out.add_term(0, total);
        return out;
    }
    let mut out = IntChain::zero(m - 1);
    for (&id, c) in &z.coeffs {
        let s = &k.simplices(m)[id];
        for skip in 0..s.len() {
            let mut face = s.clone();
            face.remove(skip);
            let i = k.simplex_index(m - 1, &face).expect("closed complex");
            let signed = if skip % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_term(i, signed);
        }
    }
    out
}

/// Is the chain a cycle? Includes the augmentation in degree 0.
pub fn is_cycle_gf2(k: &SimplicialComplex, z: &GF2Chain) -> bool {
    boundary_gf2(k, z).is_zero()
}

pub fn is_cycle_z(k: &SimplicialComplex, z: &IntChain) -> bool {
    boundary_z(k, z).is_zero()
}

/// Basis of ker d_m over GF(2), as chains.
pub fn cycle_space_basis_gf2(k: &SimplicialComplex, m: usize) -> Vec<GF2Chain> {
    if k.simplex_count(m) == 0 {
        return Vec::new();
    }
    let dm = boundary_matrix_gf2(k, m);
    dm.kernel_basis()
        .into_iter()
        .map(|v| GF2Chain::from_ids(m, v.support()))
        .collect()
}

/// Lattice basis of ker d_m over Z, via the SNF column transform.
pub fn cycle_space_basis_z(k: &SimplicialComplex, m: usize) -> Vec<IntChain> {
    let cols = k.simplex_count(m);
    if cols == 0 {
        return Vec::new();
    }
    let dm = boundary_matrix_z(k, m);
    let snf = smith_normal_form(&dm);
    let rank = snf.rank();
    let mut basis = Vec::new();
    for j in rank..cols {
        let col = snf.v.column(j);
        basis.push(IntChain::from_terms(
            m,
            col.into_iter().enumerate().map(|(i, c)| (i, c)),
        ));
    }
    basis
}

/// Some chain c with d_{m+1} c = z, or None when z is not a boundary.
pub fn is_boundary_gf2(
    k: &SimplicialComplex,
    z: &GF2Chain,
) -> Result<Option<GF2Chain>, ChainError> {
    if !is_cycle_gf2(k, z) {
        return Err(ChainError::NotACycle);
    }
    let m = z.dim;
    if z.is_zero() {
        return Ok(Some(GF2Chain::zero(m + 1)));
    }
    let cols_next = k.simplex_count(m + 1);
    if cols_next == 0 {
        return Ok(None);
    }
    let d = boundary_matrix_gf2(k, m + 1);
    let b = z.to_vec(k.simplex_count(m));
    let sol = gf2_solve(&d, &b).expect("dimensions consistent by construction");
    Ok(sol.map(|x| GF2Chain::from_ids(m + 1, x.support())))
}

pub fn is_boundary_z(
    k: &SimplicialComplex,
    z: &IntChain,
) -> Result<Option<IntChain>, ChainError> {
    if !is_cycle_z(k, z) {
        return Err(ChainError::NotACycle);
    }
    let m = z.dim;
    if z.is_zero() {
        return Ok(Some(IntChain::zero(m + 1)));
    }
    if k.simplex_count(m + 1) == 0 {
        return Ok(None);
    }
    let d = boundary_matrix_z(k, m + 1);
    let b = z.to_vec(k.simplex_count(m));
    Ok(int_solve(&d, &b).map(|x| {
        IntChain::from_terms(m + 1, x.into_iter().enumerate().map(|(i, c)| (i, c)))
    }))
}

/// Coordinates of z in the given basis, exact; NotInSpan when unsolvable.
pub fn express_in_basis_gf2(
    k: &SimplicialComplex,
    z: &GF2Chain,
    basis: &[GF2Chain],
) -> Result<Vec<u8>, ChainError> {
    let m = z.dim;
    let len = k.simplex_count(m);
    let cols: Vec<GF2Vec> = basis.iter().map(|c| c.to_vec(len)).collect();
    let mat = GF2Matrix::from_columns(&cols, len);
    let b = z.to_vec(len);
    match gf2_solve(&mat, &b).expect("dimensions consistent") {
        Some(x) => Ok((0..basis.len()).map(|i| u8::from(x.get(i))).collect()),
        None => Err(ChainError::NotInSpan),
    }
}

pub fn express_in_basis_z(
    k: &SimplicialComplex,
    z: &IntChain,
    basis: &[IntChain],
) -> Result<Vec<BigInt>, ChainError> {
    let m = z.dim;
    let len = k.simplex_count(m);
    let cols: Vec<IntVec> = basis.iter().map(|c| c.to_vec(len)).collect();
    let mat = IntMatrix::from_columns(&cols, len);
    let b = z.to_vec(len);
    int_solve(&mat, &b).ok_or(ChainError::NotInSpan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_universal_z2, build_universal_z_truncated};
    use crate::linalg::int_vec;

    #[test]
    fn boundary_matrix_triangle_gf2() {
        let k = build_universal_z2(2).unwrap();
        let d1 = boundary_matrix_gf2(&k, 1);
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        for j in 0..3 {
            assert_eq!(d1.column(j).support().len(), 2);
        }
    }

    #[test]
    fn boundary_matrix_triangle_z_signs() {
        let k = build_universal_z2(2).unwrap();
        let d1 = boundary_matrix_z(&k, 1);
        for (j, s) in k.simplices(1).iter().enumerate() {
            assert_eq!(d1[(s[0], j)], BigInt::from(-1));
            assert_eq!(d1[(s[1], j)], BigInt::from(1));
        }
    }

    #[test]
    fn augmentation_row() {
        let k = build_universal_z2(2).unwrap();
        let d0 = boundary_matrix_gf2(&k, 0);
        assert_eq!((d0.rows(), d0.cols()), (1, 3));
        assert!((0..3).all(|j| d0.get(0, j)));
    }

    #[test]
    fn hollow_triangle_homology() {
        let k = build_universal_z2(2).unwrap();
        assert_eq!(reduced_homology_gf2(&k, 1).rank, 1);
        assert_eq!(reduced_homology_gf2(&k, 0).rank, 0);
    }

    #[test]
    fn one_point_reduced_h0() {
        let k = build_universal_z2(1).unwrap();
        assert_eq!(reduced_homology_gf2(&k, 0).rank, 0);
    }

    #[test]
    fn z1_truncated_h0_is_z() {
        for b in 1..=3 {
            let k = build_universal_z_truncated(1, b).unwrap();
            let h = reduced_homology_z(&k, 0);
            assert_eq!(h.rank, 1);
            assert!(h.torsion.is_empty());
        }
    }

    #[test]
    fn triangle_cycle_detection() {
        let k = build_universal_z2(2).unwrap();
        let full = GF2Chain::from_ids(1, 0..3);
        assert!(is_cycle_gf2(&k, &full));
        let single = GF2Chain::from_ids(1, [0]);
        assert!(!is_cycle_gf2(&k, &single));
    }

    #[test]
    fn z1_zero_cycle() {
        let k = build_universal_z_truncated(1, 1).unwrap();
        let plus = k.z_vertex_index(&int_vec(&[1])).unwrap();
        let minus = k.z_vertex_index(&int_vec(&[-1])).unwrap();
        let z = IntChain::from_terms(
            0,
            [(plus, BigInt::one()), (minus, -BigInt::one())],
        );
        assert!(is_cycle_z(&k, &z));
    }

    #[test]
    fn cycle_basis_triangle() {
        let k = build_universal_z2(2).unwrap();
        let basis = cycle_space_basis_gf2(&k, 1);
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].coeffs.len(), 3);
        assert!(is_cycle_gf2(&k, &basis[0]));
    }

    #[test]
    fn cycle_basis_13_at_n3() {
        let k = build_universal_z2(3).unwrap();
        assert_eq!(cycle_space_basis_gf2(&k, 2).len(), 13);
    }

    #[test]
    fn triangle_cycle_is_not_boundary() {
        let k = build_universal_z2(2).unwrap();
        let full = GF2Chain::from_ids(1, 0..3);
        assert_eq!(is_boundary_gf2(&k, &full).unwrap(), None);
    }

    #[test]
    fn boundary_of_2simplex_is_boundary() {
        let k = build_universal_z2(3).unwrap();
        let tri = GF2Chain::from_ids(2, [0]);
        let b = boundary_gf2(&k, &tri);
        let filler = is_boundary_gf2(&k, &b).unwrap().unwrap();
        assert_eq!(boundary_gf2(&k, &filler), b);
    }

    #[test]
    fn not_a_cycle_rejected() {
        let k = build_universal_z2(2).unwrap();
        let single = GF2Chain::from_ids(1, [0]);
        assert_eq!(is_boundary_gf2(&k, &single), Err(ChainError::NotACycle));
    }

    #[test]
    fn express_in_basis_cases() {
        let k = build_universal_z2(2).unwrap();
        let basis = cycle_space_basis_gf2(&k, 1);
        let coords = express_in_basis_gf2(&k, &basis[0], &basis).unwrap();
        assert_eq!(coords, vec![1]);
        let zero = GF2Chain::zero(1);
        assert_eq!(express_in_basis_gf2(&k, &zero, &basis).unwrap(), vec![0]);
    }

    #[test]
    fn dd_zero_small() {
        for n in 2..=3 {
            let k = build_universal_z2(n).unwrap();
            for m in 1..n {
                let a = boundary_matrix_gf2(&k, m - 1);
                let b = boundary_matrix_gf2(&k, m);
                let prod = a.mul(&b);
                assert_eq!(prod, GF2Matrix::zero(a.rows(), b.cols()));
            }
        }
        let k = build_universal_z_truncated(2, 1).unwrap();
        let a = boundary_matrix_z(&k, 0);
        let b = boundary_matrix_z(&k, 1);
        assert!(a.mul(&b).is_zero());
    }

    #[test]
    fn simplex_boundary_fixture_homology() {
        // Boundary of the 3-simplex: S^2. Reduced H_2 = 1, lower vanishes.
        let k = crate::complex::simplex_boundary_fixture(3);
        assert_eq!(reduced_homology_gf2(&k, 2).rank, 1);
        assert_eq!(reduced_homology_gf2(&k, 1).rank, 0);
        assert_eq!(reduced_homology_gf2(&k, 0).rank, 0);
    }
}
