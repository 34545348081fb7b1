//! Headline bordism computations: the closed-form dimension A_n, homology
//! dimensions of the universal complexes, realizability of fixed-point data,
//! and class coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::complex::{build_universal_z2_with, build_universal_z_truncated_with, Limits,
    SimplicialComplex};
use crate::error::BordismError;
use crate::homology::{
    cycle_space_basis_gf2, cycle_space_basis_z, express_in_basis_gf2, express_in_basis_z,
    reduced_homology_gf2, reduced_homology_z, GF2Chain, IntChain,
};
use crate::poly::{
    d_gf2, d_z, dualize_gf2, dualize_z, poly_to_chain_gf2, poly_to_chain_z, ExtPoly, GF2Poly, J,
    JStar,
};

/// The closed-form dimension of the n-th 2-torus bordism group:
/// A_n = (-1)^n + sum_{i=0}^{n-1} (-1)^{n-1-i} (2^n - 2^i)...(2^n - 2^0)/(i+1)!.
///
/// Evaluated with exact rationals; a non-integer total is reported as an
/// error rather than rounded.
pub fn a_n(n: u32) -> Result<BigInt, BordismError> {
    assert!(n >= 1, "a_n requires n >= 1");
    let mut total = BigRational::from_integer(if n % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    });
    let two_n = BigInt::from(2).pow(n);
    for i in 0..n {
        let mut prod = BigInt::one();
        for j in 0..=i {
            prod *= &two_n - BigInt::from(2).pow(j);
        }
        let mut fact = BigInt::one();
        for k in 2..=(i + 1) {
            fact *= BigInt::from(k);
        }
        let mut term = BigRational::new(prod, fact);
        if (n - 1 - i) % 2 == 1 {
            term = -term;
        }
        total += term;
    }
    if !total.is_integer() {
        return Err(BordismError::IntegralityViolation(total.to_string()));
    }
    Ok(total.to_integer())
}

/// dim_{Z_2} of the n-th 2-torus bordism group, computed as reduced
/// H_{n-1}(X(Z_2^n); Z_2).
pub fn z2_bordism_dim(n: usize, limits: &Limits) -> Result<usize, BordismError> {
    let k = build_universal_z2_with(n, limits)?;
    Ok(reduced_homology_gf2(&k, n - 1).rank)
}

/// (Betti, torsion) of reduced H_{n-1} of the box-truncated X(Z^n; B): the
/// rank approximates the unitary toric bordism group from below.
pub fn unitary_rank_truncated(
    n: usize,
    bound: u32,
    limits: &Limits,
) -> Result<(usize, Vec<BigInt>), BordismError> {
    let k = build_universal_z_truncated_with(n, bound, limits)?;
    let h = reduced_homology_z(&k, n - 1);
    Ok((h.rank, h.torsion))
}

/// Outcome of a 2-torus realizability check. The residual d(g*) is the
/// obstruction certificate when nonzero; the chain certificate is the dual
/// cycle in X(Z_2^n) when realizable and the complex fits in the guard.
#[derive(Debug)]
pub struct Z2Report {
    pub input: GF2Poly<J>,
    pub faithful: bool,
    pub dual: Option<GF2Poly<JStar>>,
    pub d_of_dual: Option<GF2Poly<JStar>>,
    pub realizable: bool,
    pub certificate: Option<GF2Chain>,
}

/// Realizability of GF(2) fixed-point data: g is the fixed-point data of a
/// 2-torus manifold iff g is faithful and d(g*) = 0.
pub fn is_realizable_z2(g: &GF2Poly<J>, limits: &Limits) -> Z2Report {
    if !g.is_faithful() {
        return Z2Report {
            input: g.clone(),
            faithful: false,
            dual: None,
            d_of_dual: None,
            realizable: false,
            certificate: None,
        };
    }
    let dual = dualize_gf2(g).expect("faithful checked");
    let residual = d_gf2(&dual).expect("dual of faithful is essential");
    let realizable = residual.is_zero();
    let certificate = if realizable && !dual.is_zero() {
        build_universal_z2_with(g.ambient_rank(), limits)
            .ok()
            .and_then(|k| poly_to_chain_gf2(&dual, &k).ok())
    } else if realizable {
        Some(GF2Chain::zero(g.ambient_rank().saturating_sub(1)))
    } else {
        None
    };
    Z2Report {
        input: g.clone(),
        faithful: true,
        dual: Some(dual),
        d_of_dual: Some(residual),
        realizable,
        certificate,
    }
}

/// Outcome of a unitary realizability check; the bound records which
/// truncation the certificate chain lives in.
#[derive(Debug)]
pub struct UnitaryReport {
    pub input: ExtPoly<J>,
    pub faithful: bool,
    pub dual: Option<ExtPoly<JStar>>,
    pub d_of_dual: Option<ExtPoly<JStar>>,
    pub realizable: bool,
    pub bound: Option<u32>,
    pub certificate: Option<IntChain>,
}

/// Realizability of signed exterior fixed-point data: g is the fixed-point
/// data of a unitary toric manifold iff g is faithful and d(g*) = 0.
pub fn is_realizable_unitary(g: &ExtPoly<J>, bound: Option<u32>, limits: &Limits) -> UnitaryReport {
    if !g.is_faithful() {
        return UnitaryReport {
            input: g.clone(),
            faithful: false,
            dual: None,
            d_of_dual: None,
            realizable: false,
            bound,
            certificate: None,
        };
    }
    let dual = dualize_z(g).expect("faithful checked");
    let residual = d_z(&dual).expect("dual of faithful is essential");
    let realizable = residual.is_zero();
    let certificate = match (realizable, bound) {
        (true, Some(b)) if !dual.is_zero() => {
            build_universal_z_truncated_with(g.ambient_rank(), b, limits)
                .ok()
                .and_then(|k| poly_to_chain_z(&dual, &k).ok())
        }
        (true, _) if dual.is_zero() => {
            Some(IntChain::zero(g.ambient_rank().saturating_sub(1)))
        }
        _ => None,
    };
    UnitaryReport {
        input: g.clone(),
        faithful: true,
        dual: Some(dual),
        d_of_dual: Some(residual),
        realizable,
        bound,
        certificate,
    }
}

/// Coordinates of the class of realizable GF(2) fixed-point data in the
/// cycle-space basis of top-dimensional chains of K (which is a homology
/// basis there, since no n-chains exist).
pub fn class_coordinates_z2(
    g: &GF2Poly<J>,
    k: &SimplicialComplex,
) -> Result<Vec<u8>, BordismError> {
    let dual = dualize_gf2(g)?;
    let m = g.ambient_rank() - 1;
    let basis = cycle_space_basis_gf2(k, m);
    let chain = if dual.is_zero() {
        GF2Chain::zero(m)
    } else {
        poly_to_chain_gf2(&dual, k)?
    };
    Ok(express_in_basis_gf2(k, &chain, &basis)?)
}

pub fn class_coordinates_unitary(
    g: &ExtPoly<J>,
    k: &SimplicialComplex,
) -> Result<Vec<BigInt>, BordismError> {
    let dual = dualize_z(g)?;
    let m = g.ambient_rank() - 1;
    let basis = cycle_space_basis_z(k, m);
    let chain = if dual.is_zero() {
        IntChain::zero(m)
    } else {
        poly_to_chain_z(&dual, k)?
    };
    Ok(express_in_basis_z(k, &chain, &basis)?)
}
