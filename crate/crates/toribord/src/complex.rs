//! Universal complexes of unimodular subsets: the full complex over GF(2)
//! and a box-truncated version over Z, plus generic simplicial-complex
//! plumbing (f-vectors, purity, membership).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

use crate::error::ComplexError;
use crate::linalg::{GF2SpanTracker, GF2Vec, IntVec, ZSpanTracker};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    GF2,
    Z,
}

/// Resource guards for complex construction.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Cap on the candidate vertex pool / cell count.
    pub max_cells: usize,
    /// Permit GF(2) ranks above the default guard of n = 5.
    pub allow_large: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_cells: 100_000,
            allow_large: false,
        }
    }
}

const GF2_RANK_GUARD: usize = 5;

/// Result of a simplex membership query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexQuery {
    Present,
    Absent,
    /// Z-lattice only: some queried vector is primitive but lies outside the
    /// stored box bound.
    OutOfBound,
}

/// A finite simplicial complex whose vertices are lattice vectors and whose
/// simplices are stored as strictly increasing vertex-index tuples, grouped
/// by dimension.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    ring: Ring,
    n: usize,
    gf2_vertices: Vec<GF2Vec>,
    z_vertices: Vec<IntVec>,
    bound: Option<u32>,
    /// simplices[m] is the sorted list of (m+1)-tuples.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> Option<u32> {
        self.bound
    }

    pub fn vertex_count(&self) -> usize {
        match self.ring {
            Ring::GF2 => self.gf2_vertices.len(),
            Ring::Z => self.z_vertices.len(),
        }
    }

    pub fn gf2_vertices(&self) -> &[GF2Vec] {
        &self.gf2_vertices
    }

    pub fn z_vertices(&self) -> &[IntVec] {
        &self.z_vertices
    }

    /// Top dimension among stored simplices, or None for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        (0..self.simplices.len())
            .rev()
            .find(|&m| !self.simplices[m].is_empty())
    }

    pub fn simplices(&self, m: usize) -> &[Vec<usize>] {
        static EMPTY: Vec<Vec<usize>> = Vec::new();
        self.simplices.get(m).unwrap_or(&EMPTY)
    }

    pub fn simplex_count(&self, m: usize) -> usize {
        self.simplices(m).len()
    }

    pub fn simplex_index(&self, m: usize, tuple: &[usize]) -> Option<usize> {
        self.simplices(m)
            .binary_search_by(|s| s.as_slice().cmp(tuple))
            .ok()
    }

    pub fn gf2_vertex_index(&self, v: &GF2Vec) -> Option<usize> {
        self.gf2_vertices.binary_search(v).ok()
    }

    pub fn z_vertex_index(&self, v: &IntVec) -> Option<usize> {
        self.z_vertices.binary_search(v).ok()
    }

    /// Counts of simplices per dimension, index 0 = vertices.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dim().map_or(0, |d| d + 1);
        (0..top).map(|m| self.simplex_count(m)).collect()
    }

    /// True iff every maximal simplex has dimension n - 1.
    pub fn is_pure(&self) -> bool {
        let Some(top) = self.dim() else {
            return self.n == 0;
        };
        if top != self.n - 1 {
            return false;
        }
        for m in 0..top {
            let mut covered = vec![false; self.simplex_count(m)];
            for s in self.simplices(m + 1) {
                for skip in 0..s.len() {
                    let mut face: Vec<usize> = s.clone();
                    face.remove(skip);
                    if let Some(id) = self.simplex_index(m, &face) {
                        covered[id] = true;
                    }
                }
            }
            if covered.iter().any(|&c| !c) {
                return false;
            }
        }
        true
    }

    /// Membership of a vertex set given by explicit vectors.
    pub fn contains_simplex_gf2(&self, vs: &[GF2Vec]) -> SimplexQuery {
        assert_eq!(self.ring, Ring::GF2);
        let mut idx = Vec::with_capacity(vs.len());
        for v in vs {
            match self.gf2_vertex_index(v) {
                Some(i) => idx.push(i),
                None => return SimplexQuery::Absent,
            }
        }
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != vs.len() {
            return SimplexQuery::Absent;
        }
        match self.simplex_index(idx.len() - 1, &idx) {
            Some(_) => SimplexQuery::Present,
            None => SimplexQuery::Absent,
        }
    }

    pub fn contains_simplex_z(&self, vs: &[IntVec]) -> SimplexQuery {
        assert_eq!(self.ring, Ring::Z);
        let mut idx = Vec::with_capacity(vs.len());
        for v in vs {
            match self.z_vertex_index(v) {
                Some(i) => idx.push(i),
                None => {
                    if is_primitive(v) && self.exceeds_bound(v) {
                        return SimplexQuery::OutOfBound;
                    }
                    return SimplexQuery::Absent;
                }
            }
        }
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != vs.len() {
            return SimplexQuery::Absent;
        }
        match self.simplex_index(idx.len() - 1, &idx) {
            Some(_) => SimplexQuery::Present,
            None => SimplexQuery::Absent,
        }
    }

    fn exceeds_bound(&self, v: &IntVec) -> bool {
        match self.bound {
            Some(b) => v.iter().any(|c| c.abs() > BigInt::from(b)),
            None => false,
        }
    }

    /// Face closure: every facet of every stored simplex is stored.
    pub fn is_face_closed(&self) -> bool {
        for m in 1..self.simplices.len() {
            for s in &self.simplices[m] {
                for skip in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(skip);
                    if self.simplex_index(m - 1, &face).is_none() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Assemble a complex from explicit parts, taking the face closure of the
    /// given simplices. Rejects duplicate vertices, non-unimodular simplices,
    /// GF(2) zero vertices and non-primitive Z vertices.
    pub fn from_parts_gf2(
        n: usize,
        vertices: Vec<GF2Vec>,
        simplex_tuples: &[Vec<usize>],
    ) -> Result<Self, ComplexError> {
        for v in &vertices {
            if v.len() != n {
                return Err(ComplexError::BadVectorLength {
                    expected: n,
                    got: v.len(),
                });
            }
            if v.is_zero() {
                return Err(ComplexError::Invalid(
                    "zero vector is not a valid GF(2) vertex".into(),
                ));
            }
        }
        let mut sorted = vertices.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vertices.len() || sorted != vertices {
            return Err(ComplexError::Invalid(
                "vertices must be distinct and lexicographically sorted".into(),
            ));
        }
        let mut k = SimplicialComplex {
            ring: Ring::GF2,
            n,
            gf2_vertices: vertices,
            z_vertices: Vec::new(),
            bound: None,
            simplices: Vec::new(),
        };
        k.insert_closure(simplex_tuples)?;
        // Validate unimodularity of everything stored.
        for m in 0..k.simplices.len() {
            for s in &k.simplices[m] {
                let vs: Vec<GF2Vec> = s.iter().map(|&i| k.gf2_vertices[i].clone()).collect();
                if !crate::linalg::is_independent_gf2(&vs) {
                    return Err(ComplexError::Invalid(format!(
                        "simplex {s:?} is not unimodular over GF(2)"
                    )));
                }
            }
        }
        Ok(k)
    }

    pub fn from_parts_z(
        n: usize,
        vertices: Vec<IntVec>,
        simplex_tuples: &[Vec<usize>],
        bound: Option<u32>,
    ) -> Result<Self, ComplexError> {
        for v in &vertices {
            if v.len() != n {
                return Err(ComplexError::BadVectorLength {
                    expected: n,
                    got: v.len(),
                });
            }
            if !is_primitive(v) {
                return Err(ComplexError::Invalid(format!(
                    "non-primitive Z vertex {v:?}"
                )));
            }
        }
        let mut sorted = vertices.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vertices.len() || sorted != vertices {
            return Err(ComplexError::Invalid(
                "vertices must be distinct and lexicographically sorted".into(),
            ));
        }
        let mut k = SimplicialComplex {
            ring: Ring::Z,
            n,
            gf2_vertices: Vec::new(),
            z_vertices: vertices,
            bound,
            simplices: Vec::new(),
        };
        k.insert_closure(simplex_tuples)?;
        for m in 0..k.simplices.len() {
            for s in &k.simplices[m] {
                let vs: Vec<IntVec> = s.iter().map(|&i| k.z_vertices[i].clone()).collect();
                if !crate::linalg::is_unimodular_set_z(&vs) {
                    return Err(ComplexError::Invalid(format!(
                        "simplex {s:?} is not unimodular over Z"
                    )));
                }
            }
        }
        Ok(k)
    }

    fn insert_closure(&mut self, tuples: &[Vec<usize>]) -> Result<(), ComplexError> {
        let nv = self.vertex_count();
        let mut by_dim: Vec<std::collections::BTreeSet<Vec<usize>>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        for t in tuples {
            let mut s = t.clone();
            if s.windows(2).any(|w| w[0] >= w[1]) {
                s.sort_unstable();
                s.dedup();
            }
            if s.iter().any(|&i| i >= nv) {
                return Err(ComplexError::Invalid(format!(
                    "simplex {t:?} references an unknown vertex id"
                )));
            }
            if s.is_empty() {
                continue;
            }
            stack.push(s);
        }
        while let Some(s) = stack.pop() {
            let m = s.len() - 1;
            if by_dim.len() <= m {
                by_dim.resize_with(m + 1, Default::default);
            }
            if !by_dim[m].insert(s.clone()) {
                continue;
            }
            if m > 0 {
                for skip in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(skip);
                    stack.push(face);
                }
            }
        }
        // Every vertex is implicitly a 0-simplex.
        if by_dim.is_empty() {
            by_dim.resize_with(1, Default::default);
        }
        for i in 0..nv {
            by_dim[0].insert(vec![i]);
        }
        self.simplices = by_dim
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect();
        Ok(())
    }
}

fn is_primitive(v: &IntVec) -> bool {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
    }
    g.abs() == BigInt::from(1)
}

/// All nonzero vectors of Z_2^n in lexicographic order.
fn all_nonzero_gf2(n: usize) -> Vec<GF2Vec> {
    let mut out = Vec::with_capacity((1usize << n) - 1);
    let mut bits = vec![0u8; n];
    loop {
        // Advance the bit string in lex order (coordinate 0 most significant).
        let mut i = n;
        while i > 0 {
            i -= 1;
            if bits[i] == 0 {
                bits[i] = 1;
                for b in bits.iter_mut().skip(i + 1) {
                    *b = 0;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
        out.push(GF2Vec::from_bits(&bits));
        if bits.iter().all(|&b| b == 1) {
            return out;
        }
    }
}

/// The universal complex X(Z_2^n): all nonzero vectors as vertices, all
/// linearly independent subsets of size <= n as simplices.
pub fn build_universal_z2(n: usize) -> Result<SimplicialComplex, ComplexError> {
    build_universal_z2_with(n, &Limits::default())
}

pub fn build_universal_z2_with(
    n: usize,
    limits: &Limits,
) -> Result<SimplicialComplex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::ResourceLimit("n must be >= 1".into()));
    }
    if n > GF2_RANK_GUARD && !limits.allow_large {
        return Err(ComplexError::ResourceLimit(format!(
            "n = {n} exceeds the default guard n <= {GF2_RANK_GUARD}"
        )));
    }
    let vertices = all_nonzero_gf2(n);
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    let mut cells = 0usize;

    fn extend(
        vertices: &[GF2Vec],
        tracker: &mut GF2SpanTracker,
        prefix: &mut Vec<usize>,
        n: usize,
        simplices: &mut [Vec<Vec<usize>>],
        cells: &mut usize,
        max_cells: usize,
    ) -> Result<(), ComplexError> {
        if prefix.len() == n {
            return Ok(());
        }
        let start = prefix.last().map_or(0, |&i| i + 1);
        for i in start..vertices.len() {
            let mut t = tracker.clone();
            if !t.try_push(&vertices[i]) {
                continue;
            }
            prefix.push(i);
            simplices[prefix.len() - 1].push(prefix.clone());
            *cells += 1;
            if *cells > max_cells {
                return Err(ComplexError::ResourceLimit(format!(
                    "cell count exceeds max_cells = {max_cells}"
                )));
            }
            extend(vertices, &mut t, prefix, n, simplices, cells, max_cells)?;
            prefix.pop();
        }
        Ok(())
    }

    let mut prefix = Vec::new();
    let mut tracker = GF2SpanTracker::new();
    extend(
        &vertices,
        &mut tracker,
        &mut prefix,
        n,
        &mut simplices,
        &mut cells,
        if limits.allow_large {
            usize::MAX
        } else {
            limits.max_cells.max(1_000_000)
        },
    )?;
    while simplices.last().is_some_and(|s| s.is_empty()) {
        simplices.pop();
    }
    Ok(SimplicialComplex {
        ring: Ring::GF2,
        n,
        gf2_vertices: vertices,
        z_vertices: Vec::new(),
        bound: None,
        simplices,
    })
}

/// All primitive vectors of Z^n with max-norm <= bound, lex order.
fn primitive_vectors_in_box(n: usize, bound: u32) -> Vec<IntVec> {
    let b = bound as i64;
    let mut out = Vec::new();
    let mut current = vec![0i64; n];
    fn rec(n: usize, b: i64, depth: usize, current: &mut Vec<i64>, out: &mut Vec<IntVec>) {
        if depth == n {
            let g = current.iter().fold(0i64, |acc, &c| acc.gcd(&c.abs()));
            if g == 1 {
                out.push(current.iter().map(|&c| BigInt::from(c)).collect());
            }
            return;
        }
        for c in -b..=b {
            current[depth] = c;
            rec(n, b, depth + 1, current, out);
        }
    }
    rec(n, b, 0, &mut current, &mut out);
    out
}

/// The box-truncated universal complex X(Z^n; B): primitive vectors with
/// max-norm <= B, unimodular subsets of size <= n.
pub fn build_universal_z_truncated(n: usize, bound: u32) -> Result<SimplicialComplex, ComplexError> {
    build_universal_z_truncated_with(n, bound, &Limits::default())
}

pub fn build_universal_z_truncated_with(
    n: usize,
    bound: u32,
    limits: &Limits,
) -> Result<SimplicialComplex, ComplexError> {
    if n == 0 || bound == 0 {
        return Err(ComplexError::ResourceLimit("need n >= 1 and B >= 1".into()));
    }
    let pool = (2u128 * bound as u128 + 1).pow(n as u32);
    if pool > limits.max_cells as u128 && !limits.allow_large {
        return Err(ComplexError::ResourceLimit(format!(
            "candidate pool (2B+1)^n = {pool} exceeds max_cells = {}",
            limits.max_cells
        )));
    }
    let vertices = primitive_vectors_in_box(n, bound);
    let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    let mut cells = 0usize;
    let max_cells = if limits.allow_large {
        usize::MAX
    } else {
        limits.max_cells.max(1_000_000)
    };

    fn extend(
        vertices: &[IntVec],
        tracker: &mut ZSpanTracker,
        prefix: &mut Vec<usize>,
        n: usize,
        simplices: &mut [Vec<Vec<usize>>],
        cells: &mut usize,
        max_cells: usize,
    ) -> Result<(), ComplexError> {
        if prefix.len() == n {
            return Ok(());
        }
        let start = prefix.last().map_or(0, |&i| i + 1);
        for i in start..vertices.len() {
            if !tracker.try_push(&vertices[i]) {
                continue;
            }
            prefix.push(i);
            simplices[prefix.len() - 1].push(prefix.clone());
            *cells += 1;
            if *cells > max_cells {
                return Err(ComplexError::ResourceLimit(format!(
                    "cell count exceeds max_cells = {max_cells}"
                )));
            }
            extend(vertices, tracker, prefix, n, simplices, cells, max_cells)?;
            prefix.pop();
            tracker.pop();
        }
        Ok(())
    }

    let mut prefix = Vec::new();
    let mut tracker = ZSpanTracker::new();
    extend(
        &vertices,
        &mut tracker,
        &mut prefix,
        n,
        &mut simplices,
        &mut cells,
        max_cells,
    )?;
    while simplices.last().is_some_and(|s| s.is_empty()) {
        simplices.pop();
    }
    Ok(SimplicialComplex {
        ring: Ring::Z,
        n,
        gf2_vertices: Vec::new(),
        z_vertices: vertices,
        bound: Some(bound),
        simplices,
    })
}

/// Test fixture: the boundary of the standard n-simplex on n+1 abstract
/// vertices, realized over GF(2) in rank n+1 so every face is unimodular.
pub fn simplex_boundary_fixture(n: usize) -> SimplicialComplex {
    // Vertices e_1 .. e_{n+1} of Z_2^{n+1}; all proper subsets are simplices.
    let rank = n + 1;
    let mut vertices = Vec::new();
    for i in 0..rank {
        let mut bits = vec![0u8; rank];
        bits[i] = 1;
        vertices.push(GF2Vec::from_bits(&bits));
    }
    vertices.sort();
    let all: Vec<usize> = (0..rank).collect();
    let mut tuples = Vec::new();
    for skip in 0..rank {
        let mut t = all.clone();
        t.remove(skip);
        tuples.push(t);
    }
    let mut k = SimplicialComplex::from_parts_gf2(rank, vertices, &tuples).unwrap();
    // Ambient rank n+1 but geometric dimension n-1; keep n as stated.
    k.n = rank;
    k
}

/// Map vertex ids to a readable label (testing/debug helper).
pub fn vertex_labels(k: &SimplicialComplex) -> BTreeMap<usize, String> {
    let mut out = BTreeMap::new();
    match k.ring() {
        Ring::GF2 => {
            for (i, v) in k.gf2_vertices().iter().enumerate() {
                out.insert(i, format!("{v:?}"));
            }
        }
        Ring::Z => {
            for (i, v) in k.z_vertices().iter().enumerate() {
                let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                out.insert(i, s.join(","));
            }
        }
    }
    out
}
