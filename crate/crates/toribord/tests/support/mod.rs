//! Shared fixtures for the integration tests: seeded random generators for
//! polynomials, matrices, and pairs, plus the model polytopes.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use toribord::linalg::{
    int_det, int_vec, is_independent_gf2, GF2Matrix, GF2Vec, IntMatrix, IntVec,
};
use toribord::poly::{ExtPoly, GF2Poly, JStar};
use toribord::toric::{apply_basis_change_unitary, QuasitoricPair, SimplePolytope, SmallCoverPair};

pub fn random_gf2_vec(rng: &mut StdRng, n: usize) -> GF2Vec {
    loop {
        let bits: Vec<u8> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let v = GF2Vec::from_bits(&bits);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_independent_gf2(rng: &mut StdRng, n: usize, k: usize) -> Vec<GF2Vec> {
    loop {
        let mut vs: Vec<GF2Vec> = (0..k).map(|_| random_gf2_vec(rng, n)).collect();
        vs.sort();
        vs.dedup();
        if vs.len() == k && is_independent_gf2(&vs) {
            return vs;
        }
    }
}

pub fn random_essential_gf2(
    rng: &mut StdRng,
    n: usize,
    deg: usize,
    max_terms: usize,
) -> GF2Poly<JStar> {
    let mut p = GF2Poly::zero(n, deg);
    for _ in 0..rng.gen_range(0..=max_terms) {
        p.toggle_monomial(random_independent_gf2(rng, n, deg)).unwrap();
    }
    p
}

/// A random unimodular matrix as a short product of elementary operations;
/// entries stay small.
pub fn random_unimodular(rng: &mut StdRng, n: usize) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        let op = if n == 1 { 2 } else { rng.gen_range(0..3) };
        match op {
            0 => {
                // add +-1 times row j to row i
                while j == i {
                    j = rng.gen_range(0..n);
                }
                let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                for c in 0..n {
                    let add = &rows[j][c] * BigInt::from(s);
                    rows[i][c] += add;
                }
            }
            1 => {
                rows.swap(i, j);
            }
            _ => {
                for c in 0..n {
                    let neg = -rows[i][c].clone();
                    rows[i][c] = neg;
                }
            }
        }
    }
    IntMatrix::from_rows(&rows)
}

/// A random unimodular k-subset of Z^n: transform k standard basis vectors.
pub fn random_unimodular_set(rng: &mut StdRng, n: usize, k: usize) -> Vec<IntVec> {
    let a = random_unimodular(rng, n);
    let mut cols: Vec<IntVec> = (0..k).map(|j| a.column(j)).collect();
    cols.sort();
    cols
}

pub fn random_ext_poly(rng: &mut StdRng, n: usize, deg: usize, max_terms: usize) -> ExtPoly<JStar> {
    let mut p = ExtPoly::zero(n, deg);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let mono = random_unimodular_set(rng, n, deg);
        let c = BigInt::from(rng.gen_range(-3i64..=3));
        if !c.is_zero() {
            p.add_term(mono, c).unwrap();
        }
    }
    p
}

pub fn random_invertible_gf2(rng: &mut StdRng, n: usize) -> GF2Matrix {
    loop {
        let mut a = GF2Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                a.set(i, j, rng.gen_bool(0.5));
            }
        }
        if a.inverse().is_ok() {
            return a;
        }
    }
}

/// The gcd-of-maximal-minors characterization of unimodularity, used as an
/// independent oracle.
pub fn unimodular_minor_oracle(vs: &[IntVec], n: usize) -> bool {
    let k = vs.len();
    if k > n {
        return false;
    }
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut row_sets = Vec::new();
    subsets(n, k, 0, &mut Vec::new(), &mut row_sets);
    let mut gcd = BigInt::zero();
    for rows in &row_sets {
        let sub: Vec<IntVec> = vs
            .iter()
            .map(|v| rows.iter().map(|&r| v[r].clone()).collect())
            .collect();
        let minor = int_det(&IntMatrix::from_columns(&sub, k));
        gcd = num_integer::Integer::gcd(&gcd, &minor);
    }
    gcd == BigInt::from(1) || gcd == BigInt::from(-1)
}

pub fn polygon(m: usize) -> SimplePolytope {
    let vertices: Vec<Vec<usize>> = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    SimplePolytope::new(2, m, vertices)
}

pub fn cube() -> SimplePolytope {
    // Facet pairs (0,3), (1,4), (2,5) along the three axes.
    let mut vertices = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                vertices.push(vec![
                    if x == 0 { 0 } else { 3 },
                    if y == 0 { 1 } else { 4 },
                    if z == 0 { 2 } else { 5 },
                ]);
            }
        }
    }
    SimplePolytope::new(3, 6, vertices)
}

pub fn simplex3() -> SimplePolytope {
    SimplePolytope::new(
        3,
        4,
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
}

pub fn model_polytopes() -> Vec<SimplePolytope> {
    vec![polygon(3), polygon(4), polygon(5), cube(), simplex3()]
}

pub fn random_small_cover(rng: &mut StdRng, q: &SimplePolytope) -> SmallCoverPair {
    let n = q.dim();
    loop {
        let lambda: Vec<GF2Vec> = (0..q.facet_count())
            .map(|_| random_gf2_vec(rng, n))
            .collect();
        let pair = SmallCoverPair::new(q.clone(), lambda);
        if pair.validate().is_ok() {
            return pair;
        }
    }
}

pub fn base_quasitoric(q: &SimplePolytope) -> QuasitoricPair {
    // An axis-aligned reference coloring for each model polytope.
    let lambda: Vec<IntVec> = match (q.dim(), q.facet_count()) {
        (2, 3) => vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, -1])],
        (2, m) => {
            // Polygon: alternate axes; odd cycles need the (1,1) column.
            let mut cols = Vec::new();
            for i in 0..m {
                cols.push(if i % 2 == 0 {
                    int_vec(&[1, 0])
                } else {
                    int_vec(&[0, 1])
                });
            }
            if m % 2 == 1 {
                cols[m - 1] = int_vec(&[1, 1]);
            }
            cols
        }
        (3, 6) => vec![
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
            int_vec(&[-1, 0, 0]),
            int_vec(&[0, -1, 0]),
            int_vec(&[0, 0, -1]),
        ],
        (3, 4) => vec![
            int_vec(&[1, 0, 0]),
            int_vec(&[0, 1, 0]),
            int_vec(&[0, 0, 1]),
            int_vec(&[-1, -1, -1]),
        ],
        _ => unreachable!("unknown model polytope"),
    };
    QuasitoricPair::new(q.clone(), lambda)
}

/// Random valid quasitoric pair: a unimodular change of basis of the
/// reference pair followed by random column negations (both preserve the
/// vertex determinant condition up to sign).
pub fn random_quasitoric(rng: &mut StdRng, q: &SimplePolytope) -> QuasitoricPair {
    let base = base_quasitoric(q);
    let a = random_unimodular(rng, q.dim());
    let mut pair = apply_basis_change_unitary(&base, &a).unwrap();
    for c in pair.lambda.iter_mut() {
        if rng.gen_bool(0.5) {
            for x in c.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    pair.validate().unwrap();
    pair
}
