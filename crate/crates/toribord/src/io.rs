//! Line-oriented text formats: complexes, chains, polynomials, polytopes and
//! characteristic pairs. Writers emit canonical forms; readers validate and
//! re-serialize byte-identically.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::complex::{Ring, SimplicialComplex};
use crate::error::IoError;
use crate::homology::{GF2Chain, IntChain};
use crate::linalg::{GF2Vec, IntVec};
use crate::poly::{ExtPoly, GF2Poly, Side};
use crate::toric::{QuasitoricPair, SimplePolytope, SmallCoverPair};

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        msg: msg.into(),
    }
}

fn ring_name(r: Ring) -> &'static str {
    match r {
        Ring::GF2 => "gf2",
        Ring::Z => "z",
    }
}

fn parse_ring(s: &str, line: usize) -> Result<Ring, IoError> {
    match s {
        "gf2" => Ok(Ring::GF2),
        "z" => Ok(Ring::Z),
        other => Err(parse_err(line, format!("unknown ring `{other}`"))),
    }
}

/// Split a header line into its tag and key=value fields.
fn header_fields<'a>(
    text: &'a str,
    expected_tag: &str,
) -> Result<BTreeMap<&'a str, &'a str>, IoError> {
    let mut parts = text.split_whitespace();
    let tag = parts.next().unwrap_or("");
    if tag != expected_tag {
        return Err(parse_err(1, format!("expected `{expected_tag}` header")));
    }
    let mut map = BTreeMap::new();
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("malformed header field `{p}`")))?;
        map.insert(k, v);
    }
    Ok(map)
}

fn field<'a>(map: &BTreeMap<&'a str, &'a str>, key: &str) -> Result<&'a str, IoError> {
    map.get(key)
        .copied()
        .ok_or_else(|| parse_err(1, format!("missing header field `{key}`")))
}

fn parse_usize(s: &str, line: usize) -> Result<usize, IoError> {
    s.parse()
        .map_err(|_| parse_err(line, format!("expected an integer, got `{s}`")))
}

fn gf2_vec_str(v: &GF2Vec) -> String {
    let bits: Vec<&str> = v.iter_bits().map(|b| if b { "1" } else { "0" }).collect();
    bits.join(",")
}

fn parse_gf2_vec(s: &str, n: usize, line: usize) -> Result<GF2Vec, IoError> {
    let mut bits = Vec::new();
    for part in s.split(',') {
        match part {
            "0" => bits.push(0u8),
            "1" => bits.push(1u8),
            other => return Err(parse_err(line, format!("expected bit, got `{other}`"))),
        }
    }
    if bits.len() != n {
        return Err(parse_err(
            line,
            format!("expected {n} coordinates, got {}", bits.len()),
        ));
    }
    Ok(GF2Vec::from_bits(&bits))
}

fn int_vec_str(v: &IntVec) -> String {
    let cs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    cs.join(",")
}

fn parse_int_vec(s: &str, n: usize, line: usize) -> Result<IntVec, IoError> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let c = BigInt::from_str(part)
            .map_err(|_| parse_err(line, format!("expected an integer, got `{part}`")))?;
        out.push(c);
    }
    if out.len() != n {
        return Err(parse_err(
            line,
            format!("expected {n} coordinates, got {}", out.len()),
        ));
    }
    Ok(out)
}

/// Lines of a file body with 1-based line numbers, blank lines skipped.
fn body_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty())
}

// ---------------------------------------------------------------------------
// Complexes
// ---------------------------------------------------------------------------

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    match k.bound() {
        Some(b) => out.push_str(&format!(
            "COMPLEX ring={} n={} bound={b}\n",
            ring_name(k.ring()),
            k.ambient_rank()
        )),
        None => out.push_str(&format!(
            "COMPLEX ring={} n={}\n",
            ring_name(k.ring()),
            k.ambient_rank()
        )),
    }
    match k.ring() {
        Ring::GF2 => {
            for (i, v) in k.gf2_vertices().iter().enumerate() {
                out.push_str(&format!("V {i} {}\n", gf2_vec_str(v)));
            }
        }
        Ring::Z => {
            for (i, v) in k.z_vertices().iter().enumerate() {
                out.push_str(&format!("V {i} {}\n", int_vec_str(v)));
            }
        }
    }
    let top = k.dim().map_or(0, |d| d + 1);
    for m in 1..top {
        for s in k.simplices(m) {
            let ids: Vec<String> = s.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("S {}\n", ids.join(" ")));
        }
    }
    out
}

pub fn read_complex(text: &str) -> Result<SimplicialComplex, IoError> {
    let mut lines = body_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty complex file"))?;
    let fields = header_fields(header, "COMPLEX")?;
    let ring = parse_ring(field(&fields, "ring")?, 1)?;
    let n = parse_usize(field(&fields, "n")?, 1)?;
    let bound = match fields.get("bound") {
        Some(b) => Some(
            b.parse::<u32>()
                .map_err(|_| parse_err(1, "bad bound value"))?,
        ),
        None => None,
    };
    let mut gf2_vertices = Vec::new();
    let mut z_vertices = Vec::new();
    let mut tuples = Vec::new();
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("V") => {
                let id = parse_usize(
                    parts.next().ok_or_else(|| parse_err(ln, "missing id"))?,
                    ln,
                )?;
                let coords = parts
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing coordinates"))?;
                let expected = match ring {
                    Ring::GF2 => gf2_vertices.len(),
                    Ring::Z => z_vertices.len(),
                };
                if id != expected {
                    return Err(parse_err(ln, format!("vertex ids must be dense; expected {expected}")));
                }
                match ring {
                    Ring::GF2 => gf2_vertices.push(parse_gf2_vec(coords, n, ln)?),
                    Ring::Z => z_vertices.push(parse_int_vec(coords, n, ln)?),
                }
            }
            Some("S") => {
                let mut ids = Vec::new();
                for p in parts {
                    ids.push(parse_usize(p, ln)?);
                }
                if ids.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(parse_err(ln, "simplex ids must be strictly increasing"));
                }
                tuples.push(ids);
            }
            Some(other) => return Err(parse_err(ln, format!("unknown record `{other}`"))),
            None => {}
        }
    }
    let k = match ring {
        Ring::GF2 => SimplicialComplex::from_parts_gf2(n, gf2_vertices, &tuples),
        Ring::Z => SimplicialComplex::from_parts_z(n, z_vertices, &tuples, bound),
    };
    k.map_err(|e| IoError::Invalid(e.to_string()))
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

pub fn write_chain_gf2(c: &GF2Chain) -> String {
    let mut out = format!("CHAIN dim={} ring=gf2\n", c.dim);
    for id in &c.coeffs {
        out.push_str(&format!("C {id} 1\n"));
    }
    out
}

pub fn write_chain_z(c: &IntChain) -> String {
    let mut out = format!("CHAIN dim={} ring=z\n", c.dim);
    for (id, coeff) in &c.coeffs {
        out.push_str(&format!("C {id} {coeff}\n"));
    }
    out
}

fn read_chain_parts(text: &str, want: Ring) -> Result<(usize, Vec<(usize, BigInt)>), IoError> {
    let mut lines = body_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty chain file"))?;
    let fields = header_fields(header, "CHAIN")?;
    let ring = parse_ring(field(&fields, "ring")?, 1)?;
    if ring != want {
        return Err(IoError::Invalid(format!(
            "expected a {} chain",
            ring_name(want)
        )));
    }
    let dim = parse_usize(field(&fields, "dim")?, 1)?;
    let mut terms = Vec::new();
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("C") => {
                let id = parse_usize(
                    parts.next().ok_or_else(|| parse_err(ln, "missing id"))?,
                    ln,
                )?;
                let coeff = parts
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing coefficient"))?;
                let coeff = BigInt::from_str(coeff)
                    .map_err(|_| parse_err(ln, "bad coefficient"))?;
                terms.push((id, coeff));
            }
            Some(other) => return Err(parse_err(ln, format!("unknown record `{other}`"))),
            None => {}
        }
    }
    Ok((dim, terms))
}

pub fn read_chain_gf2(text: &str) -> Result<GF2Chain, IoError> {
    let (dim, terms) = read_chain_parts(text, Ring::GF2)?;
    let mut c = GF2Chain::zero(dim);
    for (id, coeff) in terms {
        if coeff != BigInt::one() {
            return Err(IoError::Invalid("GF(2) chain coefficients must be 1".into()));
        }
        c.toggle(id);
    }
    Ok(c)
}

pub fn read_chain_z(text: &str) -> Result<IntChain, IoError> {
    let (dim, terms) = read_chain_parts(text, Ring::Z)?;
    let mut c = IntChain::zero(dim);
    for (id, coeff) in terms {
        c.add_term(id, coeff);
    }
    Ok(c)
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

pub fn write_poly_gf2<S: Side>(p: &GF2Poly<S>) -> String {
    let mut out = format!(
        "POLY ring=gf2 n={} side={} deg={}\n",
        p.ambient_rank(),
        S::LABEL,
        p.degree()
    );
    for m in p.monomials() {
        let vs: Vec<String> = m.iter().map(gf2_vec_str).collect();
        out.push_str(&format!("T {}\n", vs.join(" ")));
    }
    out
}

pub fn write_poly_z<S: Side>(p: &ExtPoly<S>) -> String {
    let mut out = format!(
        "POLY ring=z n={} side={} deg={}\n",
        p.ambient_rank(),
        S::LABEL,
        p.degree()
    );
    for (m, c) in p.terms() {
        let vs: Vec<String> = m.iter().map(int_vec_str).collect();
        if vs.is_empty() {
            out.push_str(&format!("T {c}\n"));
        } else {
            out.push_str(&format!("T {c} {}\n", vs.join(" ")));
        }
    }
    out
}

fn poly_header<'a>(
    text: &'a str,
    want_ring: Ring,
    want_side: &str,
) -> Result<(usize, usize, impl Iterator<Item = (usize, &'a str)>), IoError> {
    let mut lines = body_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty polynomial file"))?;
    let fields = header_fields(header, "POLY")?;
    let ring = parse_ring(field(&fields, "ring")?, 1)?;
    if ring != want_ring {
        return Err(IoError::Invalid(format!(
            "expected a {} polynomial",
            ring_name(want_ring)
        )));
    }
    let side = field(&fields, "side")?;
    if side != want_side {
        return Err(IoError::Invalid(format!(
            "expected side {want_side}, got {side}"
        )));
    }
    let n = parse_usize(field(&fields, "n")?, 1)?;
    let deg = parse_usize(field(&fields, "deg")?, 1)?;
    Ok((n, deg, lines))
}

pub fn read_poly_gf2<S: Side>(text: &str) -> Result<GF2Poly<S>, IoError> {
    let (n, deg, lines) = poly_header(text, Ring::GF2, S::LABEL)?;
    let mut p = GF2Poly::zero(n, deg);
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("T") => {
                let mut mono = Vec::new();
                for v in parts {
                    mono.push(parse_gf2_vec(v, n, ln)?);
                }
                p.toggle_monomial(mono)
                    .map_err(|e| IoError::Invalid(e.to_string()))?;
            }
            Some(other) => return Err(parse_err(ln, format!("unknown record `{other}`"))),
            None => {}
        }
    }
    Ok(p)
}

pub fn read_poly_z<S: Side>(text: &str) -> Result<ExtPoly<S>, IoError> {
    let (n, deg, lines) = poly_header(text, Ring::Z, S::LABEL)?;
    let mut p = ExtPoly::zero(n, deg);
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("T") => {
                let coeff = parts
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing coefficient"))?;
                let coeff =
                    BigInt::from_str(coeff).map_err(|_| parse_err(ln, "bad coefficient"))?;
                let mut mono = Vec::new();
                for v in parts {
                    mono.push(parse_int_vec(v, n, ln)?);
                }
                p.add_term(mono, coeff)
                    .map_err(|e| IoError::Invalid(e.to_string()))?;
            }
            Some(other) => return Err(parse_err(ln, format!("unknown record `{other}`"))),
            None => {}
        }
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// Polytopes and characteristic pairs
// ---------------------------------------------------------------------------

fn write_polytope_header(q: &SimplePolytope, ring: Option<Ring>) -> String {
    let mut out = String::from("POLYTOPE");
    if let Some(r) = ring {
        out.push_str(&format!(" ring={}", ring_name(r)));
    }
    out.push_str(&format!(" n={} facets={}", q.dim(), q.facet_count()));
    if q.orientation_flipped() {
        out.push_str(" orient=-1");
    }
    out.push('\n');
    for t in q.vertices() {
        let ids: Vec<String> = t.iter().map(|f| f.to_string()).collect();
        out.push_str(&format!("VX {}\n", ids.join(" ")));
    }
    out
}

pub fn write_polytope(q: &SimplePolytope) -> String {
    write_polytope_header(q, None)
}

pub fn write_pair_z2(p: &SmallCoverPair) -> String {
    let mut out = write_polytope_header(&p.polytope, Some(Ring::GF2));
    for (f, c) in p.lambda.iter().enumerate() {
        out.push_str(&format!("COL {f} {}\n", gf2_vec_str(c)));
    }
    out
}

pub fn write_pair_unitary(p: &QuasitoricPair) -> String {
    let mut out = write_polytope_header(&p.polytope, Some(Ring::Z));
    for (f, c) in p.lambda.iter().enumerate() {
        out.push_str(&format!("COL {f} {}\n", int_vec_str(c)));
    }
    out
}

struct PolytopeFile {
    ring: Option<Ring>,
    polytope: SimplePolytope,
    gf2_cols: Vec<(usize, GF2Vec)>,
    z_cols: Vec<(usize, IntVec)>,
}

fn read_polytope_file(text: &str) -> Result<PolytopeFile, IoError> {
    let mut lines = body_lines(text);
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty polytope file"))?;
    let fields = header_fields(header, "POLYTOPE")?;
    let ring = match fields.get("ring") {
        Some(r) => Some(parse_ring(r, 1)?),
        None => None,
    };
    let n = parse_usize(field(&fields, "n")?, 1)?;
    let m = parse_usize(field(&fields, "facets")?, 1)?;
    let flipped = match fields.get("orient") {
        None | Some(&"1") => false,
        Some(&"-1") => true,
        Some(other) => return Err(parse_err(1, format!("bad orient value `{other}`"))),
    };
    let mut vertices = Vec::new();
    let mut gf2_cols = Vec::new();
    let mut z_cols = Vec::new();
    for (ln, line) in lines {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("VX") => {
                let mut ids = Vec::new();
                for p in parts {
                    ids.push(parse_usize(p, ln)?);
                }
                vertices.push(ids);
            }
            Some("COL") => {
                let f = parse_usize(
                    parts.next().ok_or_else(|| parse_err(ln, "missing facet id"))?,
                    ln,
                )?;
                let coords = parts
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing column"))?;
                match ring {
                    Some(Ring::GF2) => gf2_cols.push((f, parse_gf2_vec(coords, n, ln)?)),
                    Some(Ring::Z) => z_cols.push((f, parse_int_vec(coords, n, ln)?)),
                    None => {
                        return Err(parse_err(ln, "COL lines require a ring in the header"))
                    }
                }
            }
            Some(other) => return Err(parse_err(ln, format!("unknown record `{other}`"))),
            None => {}
        }
    }
    let mut polytope = SimplePolytope::new(n, m, vertices);
    if flipped {
        polytope = polytope.reversed();
    }
    polytope
        .validate()
        .map_err(|e| IoError::Invalid(e.to_string()))?;
    Ok(PolytopeFile {
        ring,
        polytope,
        gf2_cols,
        z_cols,
    })
}

pub fn read_polytope(text: &str) -> Result<SimplePolytope, IoError> {
    Ok(read_polytope_file(text)?.polytope)
}

fn ordered_cols<T>(cols: Vec<(usize, T)>, m: usize) -> Result<Vec<T>, IoError> {
    if cols.len() != m {
        return Err(IoError::Invalid(format!(
            "expected {m} COL lines, got {}",
            cols.len()
        )));
    }
    let mut slots: Vec<Option<T>> = (0..m).map(|_| None).collect();
    for (f, c) in cols {
        if f >= m || slots[f].is_some() {
            return Err(IoError::Invalid(format!("bad or repeated facet id {f}")));
        }
        slots[f] = Some(c);
    }
    Ok(slots.into_iter().map(|s| s.unwrap()).collect())
}

pub fn read_pair_z2(text: &str) -> Result<SmallCoverPair, IoError> {
    let file = read_polytope_file(text)?;
    if file.ring != Some(Ring::GF2) {
        return Err(IoError::Invalid("expected ring=gf2 in the header".into()));
    }
    let m = file.polytope.facet_count();
    let pair = SmallCoverPair::new(file.polytope, ordered_cols(file.gf2_cols, m)?);
    pair.validate().map_err(|e| IoError::Invalid(e.to_string()))?;
    Ok(pair)
}

pub fn read_pair_unitary(text: &str) -> Result<QuasitoricPair, IoError> {
    let file = read_polytope_file(text)?;
    if file.ring != Some(Ring::Z) {
        return Err(IoError::Invalid("expected ring=z in the header".into()));
    }
    let m = file.polytope.facet_count();
    let pair = QuasitoricPair::new(file.polytope, ordered_cols(file.z_cols, m)?);
    pair.validate().map_err(|e| IoError::Invalid(e.to_string()))?;
    Ok(pair)
}
