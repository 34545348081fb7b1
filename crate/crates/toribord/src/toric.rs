//! Combinatorial models of small covers and omnioriented quasitoric
//! manifolds: simple polytopes as vertex–facet incidences, characteristic
//! pairs, coloring polynomials, signed fixed-point data, equivalence, and
//! connected sums realizing class addition.
//!
//! Signs on the unitary side come from an orientation of the polytope's dual
//! sphere: the vertices of a simple n-polytope, viewed as n-subsets of facet
//! ids, are the top simplices of a simplicial (n-1)-sphere. Orienting that
//! sphere assigns each vertex a sign o(v) relative to the increasing-facet-id
//! order, and phi is the image of the fundamental cycle sum_v o(v)·v under
//! facet-id -> column. This is what makes d(phi) = 0 hold identically.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::ToricError;
use crate::linalg::{int_det, is_independent_gf2, GF2Matrix, GF2Vec, IntMatrix, IntVec};
use crate::poly::{dualize_gf2, dualize_z, ExtPoly, GF2Poly, J, JStar};

/// A simple polytope as pure combinatorics: n, an ordered facet set, and the
/// vertices, each an n-subset of facet ids. `orient` is a global flip of the
/// computed dual-sphere orientation (the bordism inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolytope {
    n: usize,
    num_facets: usize,
    /// Each tuple sorted ascending; order of the list is the vertex id order.
    vertices: Vec<Vec<usize>>,
    orient: i8,
}

impl SimplePolytope {
    pub fn new(n: usize, num_facets: usize, vertices: Vec<Vec<usize>>) -> Self {
        let vertices = vertices
            .into_iter()
            .map(|mut t| {
                t.sort_unstable();
                t
            })
            .collect();
        SimplePolytope {
            n,
            num_facets,
            vertices,
            orient: 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.num_facets
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, v: usize) -> &[usize] {
        &self.vertices[v]
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    /// True iff the global orientation flip is in effect.
    pub fn orientation_flipped(&self) -> bool {
        self.orient < 0
    }

    /// Reverse the global orientation (negates phi of any pair over it).
    pub fn reversed(&self) -> SimplePolytope {
        let mut p = self.clone();
        p.orient = -p.orient;
        p
    }

    /// Check the simple-polytope invariants, naming the first violation.
    pub fn validate(&self) -> Result<(), ToricError> {
        if self.n == 0 {
            return Err(ToricError::InvalidPolytope("dimension must be >= 1".into()));
        }
        for (i, t) in self.vertices.iter().enumerate() {
            if t.len() != self.n || t.windows(2).any(|w| w[0] == w[1]) {
                return Err(ToricError::InvalidPolytope(format!(
                    "vertex {i} must lie in exactly {} distinct facets",
                    self.n
                )));
            }
            if t.iter().any(|&f| f >= self.num_facets) {
                return Err(ToricError::InvalidPolytope(format!(
                    "vertex {i} references an unknown facet id"
                )));
            }
        }
        for i in 0..self.vertices.len() {
            for j in i + 1..self.vertices.len() {
                if self.vertices[i] == self.vertices[j] {
                    return Err(ToricError::InvalidPolytope(format!(
                        "duplicate vertices {i} and {j}"
                    )));
                }
            }
        }
        for f in 0..self.num_facets {
            if !self.vertices.iter().any(|t| t.contains(&f)) {
                return Err(ToricError::InvalidPolytope(format!(
                    "facet {f} contains no vertex"
                )));
            }
        }
        if self.vertices.is_empty() {
            return Err(ToricError::InvalidPolytope("no vertices".into()));
        }
        // Connectivity of the vertex-facet bipartite graph. An interval
        // (n = 1) has one facet per vertex and is exempt.
        if self.n > 1 {
            let mut seen_v = vec![false; self.vertices.len()];
            let mut seen_f = vec![false; self.num_facets];
            let mut stack = vec![0usize];
            seen_v[0] = true;
            while let Some(v) = stack.pop() {
                for &f in &self.vertices[v] {
                    if !seen_f[f] {
                        seen_f[f] = true;
                        for (w, t) in self.vertices.iter().enumerate() {
                            if !seen_v[w] && t.contains(&f) {
                                seen_v[w] = true;
                                stack.push(w);
                            }
                        }
                    }
                }
            }
            if seen_v.iter().any(|&s| !s) || seen_f.iter().any(|&s| !s) {
                return Err(ToricError::InvalidPolytope(
                    "vertex-facet graph is not connected".into(),
                ));
            }
        }
        Ok(())
    }

    /// Orientation signs of the dual sphere, one per vertex, relative to the
    /// increasing-facet-id order of each tuple. Computed by propagating
    /// across ridges (each (n-1)-subset must lie in exactly two vertices with
    /// opposite induced signs); the first vertex is taken positive, then the
    /// global `orient` flip is applied.
    pub fn orientation(&self) -> Result<Vec<i8>, ToricError> {
        self.validate()?;
        let nv = self.vertices.len();
        // ridge -> list of (vertex, parity of deleted position)
        let mut ridges: std::collections::BTreeMap<Vec<usize>, Vec<(usize, i8)>> =
            std::collections::BTreeMap::new();
        for (v, t) in self.vertices.iter().enumerate() {
            for skip in 0..t.len() {
                let mut r = t.clone();
                r.remove(skip);
                let parity = if skip % 2 == 0 { 1 } else { -1 };
                ridges.entry(r).or_default().push((v, parity));
            }
        }
        for (r, inc) in &ridges {
            if inc.len() != 2 {
                return Err(ToricError::InvalidPolytope(format!(
                    "ridge {r:?} lies in {} vertices, expected 2 (not a closed pseudomanifold)",
                    inc.len()
                )));
            }
        }
        let mut o: Vec<i8> = vec![0; nv];
        o[0] = 1;
        let mut stack = vec![0usize];
        // Adjacency via ridges: o(w) = -o(v) * parity_v * parity_w.
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); nv];
        for inc in ridges.values() {
            let (v, pv) = inc[0];
            let (w, pw) = inc[1];
            adj[v].push((w, -pv * pw));
            adj[w].push((v, -pv * pw));
        }
        while let Some(v) = stack.pop() {
            for &(w, rel) in &adj[v] {
                let expected = o[v] * rel;
                if o[w] == 0 {
                    o[w] = expected;
                    stack.push(w);
                } else if o[w] != expected {
                    return Err(ToricError::InvalidPolytope(
                        "dual sphere is not orientable".into(),
                    ));
                }
            }
        }
        if o.iter().any(|&s| s == 0) {
            return Err(ToricError::InvalidPolytope(
                "dual sphere is not connected through ridges".into(),
            ));
        }
        if self.orient < 0 {
            for s in &mut o {
                *s = -*s;
            }
        }
        Ok(o)
    }

    fn same_shape(&self, other: &SimplePolytope) -> bool {
        self.n == other.n
            && self.num_facets == other.num_facets
            && self.vertices.len() == other.vertices.len()
    }
}

/// A small cover: a simple polytope with a nonzero GF(2) color per facet,
/// independent at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallCoverPair {
    pub polytope: SimplePolytope,
    pub lambda: Vec<GF2Vec>,
}

impl SmallCoverPair {
    pub fn new(polytope: SimplePolytope, lambda: Vec<GF2Vec>) -> Self {
        SmallCoverPair { polytope, lambda }
    }

    pub fn validate(&self) -> Result<(), ToricError> {
        self.polytope.validate()?;
        let n = self.polytope.dim();
        if self.lambda.len() != self.polytope.facet_count() {
            return Err(ToricError::InvalidPair(format!(
                "expected {} facet colors, got {}",
                self.polytope.facet_count(),
                self.lambda.len()
            )));
        }
        for (f, c) in self.lambda.iter().enumerate() {
            if c.len() != n || c.is_zero() {
                return Err(ToricError::InvalidPair(format!(
                    "facet {f} needs a nonzero color of length {n}"
                )));
            }
        }
        for (v, t) in self.polytope.vertices().iter().enumerate() {
            let cols: Vec<GF2Vec> = t.iter().map(|&f| self.lambda[f].clone()).collect();
            if !is_independent_gf2(&cols) {
                return Err(ToricError::InvalidPair(format!(
                    "colors at vertex {v} are dependent"
                )));
            }
        }
        Ok(())
    }

    fn vertex_columns(&self, v: usize) -> Vec<GF2Vec> {
        self.polytope
            .vertex(v)
            .iter()
            .map(|&f| self.lambda[f].clone())
            .collect()
    }
}

/// The coloring polynomial sum_v lambda(F_1)...lambda(F_n) over all vertices,
/// with mod-2 cancellation.
pub fn coloring_polynomial_z2(pair: &SmallCoverPair) -> Result<GF2Poly<JStar>, ToricError> {
    pair.validate()?;
    let n = pair.polytope.dim();
    let mut p = GF2Poly::zero(n, n);
    for v in 0..pair.polytope.vertex_count() {
        p.toggle_monomial(pair.vertex_columns(v))
            .map_err(|e| ToricError::InvalidPair(e.to_string()))?;
    }
    Ok(p)
}

/// The fixed-point data of the small cover: the dual of the coloring
/// polynomial (each vertex contributes the dual basis of its colors).
pub fn fixed_point_data_z2(pair: &SmallCoverPair) -> Result<GF2Poly<J>, ToricError> {
    let coloring = coloring_polynomial_z2(pair)?;
    dualize_gf2(&coloring).map_err(|e| ToricError::InvalidPair(e.to_string()))
}

/// An omnioriented quasitoric manifold: a simple polytope with an integer
/// column per facet, |det| = 1 at every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasitoricPair {
    pub polytope: SimplePolytope,
    pub lambda: Vec<IntVec>,
}

impl QuasitoricPair {
    pub fn new(polytope: SimplePolytope, lambda: Vec<IntVec>) -> Self {
        QuasitoricPair { polytope, lambda }
    }

    pub fn validate(&self) -> Result<(), ToricError> {
        self.polytope.validate()?;
        let n = self.polytope.dim();
        if self.lambda.len() != self.polytope.facet_count() {
            return Err(ToricError::InvalidPair(format!(
                "expected {} facet columns, got {}",
                self.polytope.facet_count(),
                self.lambda.len()
            )));
        }
        for (f, c) in self.lambda.iter().enumerate() {
            if c.len() != n {
                return Err(ToricError::InvalidPair(format!(
                    "facet {f} needs a column of length {n}"
                )));
            }
        }
        for v in 0..self.polytope.vertex_count() {
            let d = self.vertex_det(v);
            if d.abs() != BigInt::from(1) {
                return Err(ToricError::InvalidPair(format!(
                    "columns at vertex {v} have determinant {d}, expected ±1"
                )));
            }
        }
        // The sign model needs an orientable dual sphere.
        self.polytope.orientation()?;
        Ok(())
    }

    fn vertex_columns(&self, v: usize) -> Vec<IntVec> {
        self.polytope
            .vertex(v)
            .iter()
            .map(|&f| self.lambda[f].clone())
            .collect()
    }

    /// Determinant of the columns at v, ordered by increasing facet id.
    pub fn vertex_det(&self, v: usize) -> BigInt {
        let cols = self.vertex_columns(v);
        int_det(&IntMatrix::from_columns(&cols, self.polytope.dim()))
    }

    /// Orientation-adjusted vertex signs epsilon(v): the facet-id determinant
    /// times the dual-sphere orientation sign. Two glued vertices cancel in
    /// phi exactly when their epsilons are opposite.
    pub fn vertex_signs(&self) -> Result<Vec<i8>, ToricError> {
        self.validate()?;
        let o = self.polytope.orientation()?;
        Ok((0..self.polytope.vertex_count())
            .map(|v| {
                let d = if self.vertex_det(v) > BigInt::from(0) { 1 } else { -1 };
                o[v] * d
            })
            .collect())
    }
}

/// phi of the pair: the image of the dual-sphere fundamental cycle, each
/// vertex contributing o(v) times the wedge of its columns in facet-id
/// order. d_z of the result is always zero.
pub fn phi_quasitoric(pair: &QuasitoricPair) -> Result<ExtPoly<JStar>, ToricError> {
    pair.validate()?;
    let o = pair.polytope.orientation()?;
    let n = pair.polytope.dim();
    let mut p = ExtPoly::zero(n, n);
    for v in 0..pair.polytope.vertex_count() {
        p.add_term(pair.vertex_columns(v), BigInt::from(o[v]))
            .map_err(|e| ToricError::InvalidPair(e.to_string()))?;
    }
    Ok(p)
}

/// The unitary fixed-point data: the dual of phi (each vertex contributes
/// the dual basis of its columns, i.e. its tangent weights).
pub fn fixed_point_data_unitary(pair: &QuasitoricPair) -> Result<ExtPoly<J>, ToricError> {
    let phi = phi_quasitoric(pair)?;
    dualize_z(&phi).map_err(|e| ToricError::InvalidPair(e.to_string()))
}

/// True iff some facet relabeling is a polytope isomorphism carrying the
/// columns of p1 to those of p2 exactly.
pub fn pair_equivalent(p1: &QuasitoricPair, p2: &QuasitoricPair) -> bool {
    if !p1.polytope.same_shape(&p2.polytope) {
        return false;
    }
    let m = p1.polytope.facet_count();
    let mut assign: Vec<Option<usize>> = vec![None; m];
    let mut used = vec![false; m];
    search_facet_map(p1, p2, 0, &mut assign, &mut used)
}

fn search_facet_map(
    p1: &QuasitoricPair,
    p2: &QuasitoricPair,
    f: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    let m = p1.polytope.facet_count();
    if f == m {
        return is_vertex_bijection(&p1.polytope, &p2.polytope, assign);
    }
    for g in 0..m {
        if used[g] || p1.lambda[f] != p2.lambda[g] {
            continue;
        }
        assign[f] = Some(g);
        used[g] = true;
        if search_facet_map(p1, p2, f + 1, assign, used) {
            return true;
        }
        assign[f] = None;
        used[g] = false;
    }
    false
}

fn is_vertex_bijection(
    q1: &SimplePolytope,
    q2: &SimplePolytope,
    assign: &[Option<usize>],
) -> bool {
    let mut images: Vec<Vec<usize>> = q1
        .vertices()
        .iter()
        .map(|t| {
            let mut img: Vec<usize> = t.iter().map(|&f| assign[f].unwrap()).collect();
            img.sort_unstable();
            img
        })
        .collect();
    images.sort();
    let mut targets: Vec<Vec<usize>> = q2.vertices().to_vec();
    targets.sort();
    images == targets
}

/// Replace every column by A·column; validity is preserved when A is
/// invertible over GF(2).
pub fn apply_basis_change_z2(
    pair: &SmallCoverPair,
    a: &GF2Matrix,
) -> Result<SmallCoverPair, ToricError> {
    if a.inverse().is_err() {
        return Err(ToricError::NotInvertible);
    }
    let lambda = pair.lambda.iter().map(|c| a.mul_vec(c)).collect();
    let out = SmallCoverPair::new(pair.polytope.clone(), lambda);
    out.validate()?;
    Ok(out)
}

/// Replace every column by A·column; |det A| must be 1. Determinant signs at
/// the vertices all multiply by det A.
pub fn apply_basis_change_unitary(
    pair: &QuasitoricPair,
    a: &IntMatrix,
) -> Result<QuasitoricPair, ToricError> {
    if int_det(a).abs() != BigInt::from(1) {
        return Err(ToricError::NotInvertible);
    }
    let lambda = pair.lambda.iter().map(|c| a.mul_vec(c)).collect();
    let out = QuasitoricPair::new(pair.polytope.clone(), lambda);
    out.validate()?;
    Ok(out)
}

/// All bijections between the facet tuples at two vertices that match the
/// given column-equality predicate; each is a vector `b` with
/// `fs2[b[i]]` glued to `fs1[i]`.
fn facet_matchings<T: PartialEq>(cols1: &[T], cols2: &[T]) -> Vec<Vec<usize>> {
    let n = cols1.len();
    let mut out = Vec::new();
    let mut pick = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec<T: PartialEq>(
        i: usize,
        cols1: &[T],
        cols2: &[T],
        pick: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == cols1.len() {
            out.push(pick.clone());
            return;
        }
        for j in 0..cols2.len() {
            if !used[j] && cols1[i] == cols2[j] {
                used[j] = true;
                pick[i] = j;
                rec(i + 1, cols1, cols2, pick, used, out);
                used[j] = false;
            }
        }
    }
    rec(0, cols1, cols2, &mut pick, &mut used, &mut out);
    out
}

/// Combinatorial connected sum of polytopes: delete v1 and v2, identify the
/// facets at v1 with the facets at v2 under the bijection, keep all other
/// facets distinct. `bij[i]` is the position (within v2's facet tuple) glued
/// to the i-th facet of v1's tuple. Returns the polytope together with the
/// relabeling map for p2's facets.
fn glue_polytopes(
    q1: &SimplePolytope,
    v1: usize,
    q2: &SimplePolytope,
    v2: usize,
    bij: &[usize],
) -> (SimplePolytope, Vec<usize>) {
    let fs1 = q1.vertex(v1).to_vec();
    let fs2 = q2.vertex(v2).to_vec();
    let m1 = q1.facet_count();
    let mut relabel = vec![usize::MAX; q2.facet_count()];
    for (i, &j) in bij.iter().enumerate() {
        relabel[fs2[j]] = fs1[i];
    }
    let mut next = m1;
    for f in 0..q2.facet_count() {
        if relabel[f] == usize::MAX {
            relabel[f] = next;
            next += 1;
        }
    }
    let mut vertices: Vec<Vec<usize>> = Vec::new();
    for (v, t) in q1.vertices().iter().enumerate() {
        if v != v1 {
            vertices.push(t.clone());
        }
    }
    for (v, t) in q2.vertices().iter().enumerate() {
        if v != v2 {
            vertices.push(t.iter().map(|&f| relabel[f]).collect());
        }
    }
    (SimplePolytope::new(q1.dim(), next, vertices), relabel)
}

/// Connected sum of small covers at vertices with matching colors. The two
/// deleted vertex monomials are equal and cancel mod 2, so the coloring
/// polynomial of the result is the sum of the inputs; this is verified.
pub fn connect_sum_z2(
    p1: &SmallCoverPair,
    v1: usize,
    p2: &SmallCoverPair,
    v2: usize,
) -> Result<SmallCoverPair, ToricError> {
    p1.validate()?;
    p2.validate()?;
    let cols1 = p1.vertex_columns(v1);
    let cols2 = p2.vertex_columns(v2);
    let matchings = facet_matchings(&cols1, &cols2);
    if matchings.is_empty() {
        return Err(ToricError::NoMatching(
            "no facet bijection matches the colors at the chosen vertices".into(),
        ));
    }
    let expected = coloring_polynomial_z2(p1)?.add(&coloring_polynomial_z2(p2)?);
    let mut last_err = None;
    for bij in matchings {
        let (polytope, relabel) = glue_polytopes(&p1.polytope, v1, &p2.polytope, v2, &bij);
        let mut lambda = p1.lambda.clone();
        lambda.resize(polytope.facet_count(), GF2Vec::zero(p1.polytope.dim()));
        for (f, c) in p2.lambda.iter().enumerate() {
            lambda[relabel[f]] = c.clone();
        }
        let out = SmallCoverPair::new(polytope, lambda);
        match out.validate() {
            Err(e) => {
                last_err = Some(e);
                continue;
            }
            Ok(()) => {}
        }
        if coloring_polynomial_z2(&out)? == expected {
            return Ok(out);
        }
        last_err = Some(ToricError::InvalidResult(
            "coloring polynomial of the glued pair is not the sum of the inputs".into(),
        ));
    }
    Err(match last_err {
        Some(ToricError::InvalidPair(m)) => ToricError::InvalidResult(m),
        Some(e) => e,
        None => ToricError::InvalidResult("no matching produced a valid pair".into()),
    })
}

/// Connected sum of quasitoric pairs at vertices with matching columns and
/// opposite orientation-adjusted signs. The result's global orientation is
/// chosen so that phi(result) = phi(p1) + phi(p2) exactly; the identity is
/// verified and InvalidResult is raised if no orientation achieves it.
pub fn connect_sum_unitary(
    p1: &QuasitoricPair,
    v1: usize,
    p2: &QuasitoricPair,
    v2: usize,
) -> Result<QuasitoricPair, ToricError> {
    p1.validate()?;
    p2.validate()?;
    let s1 = p1.vertex_signs()?;
    let s2 = p2.vertex_signs()?;
    if s1[v1] != -s2[v2] {
        return Err(ToricError::NoMatching(format!(
            "vertex signs must be opposite, got {} and {}",
            s1[v1], s2[v2]
        )));
    }
    let cols1 = p1.vertex_columns(v1);
    let cols2 = p2.vertex_columns(v2);
    let matchings = facet_matchings(&cols1, &cols2);
    if matchings.is_empty() {
        return Err(ToricError::NoMatching(
            "no facet bijection matches the columns at the chosen vertices".into(),
        ));
    }
    let expected = phi_quasitoric(p1)?.add(&phi_quasitoric(p2)?);
    let mut last_err = None;
    for bij in matchings {
        let (polytope, relabel) = glue_polytopes(&p1.polytope, v1, &p2.polytope, v2, &bij);
        let mut lambda = p1.lambda.clone();
        lambda.resize(polytope.facet_count(), Vec::new());
        for (f, c) in p2.lambda.iter().enumerate() {
            lambda[relabel[f]] = c.clone();
        }
        for flip in [false, true] {
            let q = if flip {
                polytope.reversed()
            } else {
                polytope.clone()
            };
            let out = QuasitoricPair::new(q, lambda.clone());
            match out.validate() {
                Err(e) => {
                    last_err = Some(e);
                    continue;
                }
                Ok(()) => {}
            }
            if phi_quasitoric(&out)? == expected {
                return Ok(out);
            }
            last_err = Some(ToricError::InvalidResult(
                "phi of the glued pair is not the sum of the inputs".into(),
            ));
        }
    }
    Err(match last_err {
        Some(ToricError::InvalidPair(m)) => ToricError::InvalidResult(m),
        Some(e) => e,
        None => ToricError::InvalidResult("no matching produced a valid pair".into()),
    })
}
