//! End-to-end acceptance checks. Each test covers one criterion and prints a
//! single pass/fail line (visible with `--nocapture`).

mod support;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use support::*;

use toribord::bordism::{
    a_n, class_coordinates_z2, is_realizable_unitary, is_realizable_z2, unitary_rank_truncated,
    z2_bordism_dim,
};
use toribord::complex::{build_universal_z2, build_universal_z_truncated, Limits};
use toribord::homology::{boundary_gf2, boundary_z, reduced_homology_gf2, GF2Chain, IntChain};
use toribord::linalg::{int_det, int_vec, smith_normal_form, GF2Vec, IntMatrix, IntVec};

fn gf2_vec(bits: &[u8]) -> GF2Vec {
    GF2Vec::from_bits(bits)
}
use toribord::poly::{
    d_gf2, d_z, dualize_gf2, dualize_z, poly_to_chain_gf2, poly_to_chain_z, ExtPoly, GF2Poly, J,
    JStar,
};
use toribord::toric::{
    apply_basis_change_z2, coloring_polynomial_z2, connect_sum_unitary, connect_sum_z2,
    fixed_point_data_unitary, fixed_point_data_z2, phi_quasitoric, QuasitoricPair, SimplePolytope,
    SmallCoverPair,
};

fn criterion(n: usize, name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {n} ({name}): pass"),
        Err(msg) => {
            println!("criterion {n} ({name}): fail - {msg}");
            panic!("criterion {n} failed: {msg}");
        }
    }
}

fn check(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn rp2_pair() -> SmallCoverPair {
    let q = SimplePolytope::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    SmallCoverPair::new(q, vec![gf2_vec(&[1, 0]), gf2_vec(&[0, 1]), gf2_vec(&[1, 1])])
}

fn cp1_pair() -> QuasitoricPair {
    let q = SimplePolytope::new(1, 2, vec![vec![0], vec![1]]);
    QuasitoricPair::new(q, vec![int_vec(&[1]), int_vec(&[-1])])
}

fn cp2_pair() -> QuasitoricPair {
    let q = SimplePolytope::new(2, 3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    QuasitoricPair::new(q, vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, -1])])
}

#[test]
fn criterion_1_dimension_identity() {
    criterion(1, "dimension identity", || {
        let limits = Limits::default();
        let expected = [0usize, 1, 13];
        for (n, want) in (1usize..=3).zip(expected) {
            let t = Instant::now();
            let dim = z2_bordism_dim(n, &limits).map_err(|e| e.to_string())?;
            let formula = a_n(n as u32).map_err(|e| e.to_string())?;
            check(dim == want, &format!("homology dim at n={n} is {dim}, want {want}"))?;
            check(
                formula == BigInt::from(want),
                &format!("formula at n={n} gives {formula}, want {want}"),
            )?;
            check(
                t.elapsed() < Duration::from_secs(1),
                &format!("n={n} took {:?}, budget 1s", t.elapsed()),
            )?;
        }
        let t = Instant::now();
        let dim4 = z2_bordism_dim(4, &limits).map_err(|e| e.to_string())?;
        let formula4 = a_n(4).map_err(|e| e.to_string())?;
        check(
            BigInt::from(dim4) == formula4,
            &format!("n=4 disagreement: homology {dim4}, formula {formula4}"),
        )?;
        check(
            t.elapsed() < Duration::from_secs(600),
            &format!("n=4 took {:?}, budget 10min", t.elapsed()),
        )
    });
}

#[test]
fn criterion_2_lower_homology_vanishes() {
    criterion(2, "wedge-of-spheres homology", || {
        let limits = Limits::default();
        for n in 1usize..=4 {
            let k = toribord::complex::build_universal_z2_with(n, &limits)
                .map_err(|e| e.to_string())?;
            for m in 0..n.saturating_sub(1) {
                let h = reduced_homology_gf2(&k, m);
                check(
                    h.rank == 0,
                    &format!("reduced H_{m} of X(Z_2^{n}) has dim {}", h.rank),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_3_unitary_rank_one() {
    criterion(3, "unitary rank-1 case", || {
        let limits = Limits::default();
        for b in [1u32, 2, 3, 5, 8] {
            let (rank, torsion) = unitary_rank_truncated(1, b, &limits).map_err(|e| e.to_string())?;
            check(
                rank == 1 && torsion.is_empty(),
                &format!("H_0 of X(Z^1;{b}) is rank {rank}, torsion {torsion:?}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_4_truncated_unitary_growth() {
    criterion(4, "truncated unitary growth", || {
        let limits = Limits::default();
        let t = Instant::now();
        let (r1, t1) = unitary_rank_truncated(2, 1, &limits).map_err(|e| e.to_string())?;
        let (r2, t2) = unitary_rank_truncated(2, 2, &limits).map_err(|e| e.to_string())?;
        check(r1 == 13, &format!("rank at B=1 is {r1}, want 13"))?;
        check(r2 > r1, &format!("rank at B=2 is {r2}, not above {r1}"))?;
        check(
            t1.is_empty() && t2.is_empty(),
            &format!("unexpected torsion: {t1:?} / {t2:?}"),
        )?;
        check(
            t.elapsed() < Duration::from_secs(10),
            &format!("took {:?}, budget 10s", t.elapsed()),
        )
    });
}

#[test]
fn criterion_5_realizability_oracle() {
    criterion(5, "realizability oracle", || {
        let limits = Limits::default();

        let rp2 = fixed_point_data_z2(&rp2_pair()).map_err(|e| e.to_string())?;
        check(is_realizable_z2(&rp2, &limits).realizable, "RP^2 data rejected")?;

        let single =
            GF2Poly::<J>::from_monomials(2, 2, [vec![gf2_vec(&[1, 0]), gf2_vec(&[0, 1])]])
                .map_err(|e| e.to_string())?;
        check(
            !is_realizable_z2(&single, &limits).realizable,
            "single GF(2) monomial accepted",
        )?;

        for (name, pair) in [("CP^1", cp1_pair()), ("CP^2", cp2_pair())] {
            let g = fixed_point_data_unitary(&pair).map_err(|e| e.to_string())?;
            check(
                is_realizable_unitary(&g, None, &limits).realizable,
                &format!("{name} data rejected"),
            )?;
        }

        let single_z = ExtPoly::<J>::from_terms(
            2,
            2,
            [(vec![int_vec(&[1, 0]), int_vec(&[0, 1])], BigInt::from(1))],
        )
        .map_err(|e| e.to_string())?;
        check(
            !is_realizable_unitary(&single_z, None, &limits).realizable,
            "single exterior monomial accepted",
        )
    });
}

#[test]
fn criterion_6_property_suites() {
    criterion(6, "randomized property suites", || {
        const CASES: usize = 200;
        let limits = Limits::default();
        let k3 = build_universal_z2(3).map_err(|e| e.to_string())?;
        let kz = build_universal_z_truncated(2, 1).map_err(|e| e.to_string())?;
        let models = model_polytopes();

        let mut rng = StdRng::seed_from_u64(0x746f7269);

        // d o d = 0, both rings, n <= 4.
        for _ in 0..CASES {
            let n = rng.gen_range(1..=4);
            let deg = rng.gen_range(0..=n);
            let p = random_essential_gf2(&mut rng, n, deg, 6);
            check(
                d_gf2(&d_gf2(&p).unwrap()).unwrap().is_zero(),
                "d o d != 0 over GF(2)",
            )?;
            let q = random_ext_poly(&mut rng, n, deg, 6);
            check(d_z(&d_z(&q).unwrap()).unwrap().is_zero(), "d o d != 0 over Z")?;
        }

        // Dualize is an involution on faithful polynomials.
        for _ in 0..CASES {
            let n = rng.gen_range(1..=4);
            let g = random_essential_gf2(&mut rng, n, n, 5);
            check(
                dualize_gf2(&dualize_gf2(&g).unwrap()).unwrap() == g,
                "GF(2) dualize not involutive",
            )?;
            let h = random_ext_poly(&mut rng, n, n, 5);
            check(
                dualize_z(&dualize_z(&h).unwrap()).unwrap() == h,
                "Z dualize not involutive",
            )?;
        }

        // Commuting square r o d = boundary o r.
        for _ in 0..CASES {
            let deg = rng.gen_range(2..=3);
            let dim = deg - 1;
            let mut p = GF2Poly::<JStar>::zero(3, deg);
            for _ in 0..rng.gen_range(1..=6) {
                let s = &k3.simplices(dim)[rng.gen_range(0..k3.simplex_count(dim))];
                let mono: Vec<_> = s.iter().map(|&i| k3.gf2_vertices()[i].clone()).collect();
                p.toggle_monomial(mono).unwrap();
            }
            if p.is_zero() {
                continue;
            }
            let d = d_gf2(&p).unwrap();
            let lhs = if d.is_zero() {
                GF2Chain::zero(dim - 1)
            } else {
                poly_to_chain_gf2(&d, &k3).unwrap()
            };
            let rhs = boundary_gf2(&k3, &poly_to_chain_gf2(&p, &k3).unwrap());
            check(lhs == rhs, "GF(2) square does not commute")?;

            let mut q = ExtPoly::<JStar>::zero(2, 2);
            for _ in 0..rng.gen_range(1..=6) {
                let s = &kz.simplices(1)[rng.gen_range(0..kz.simplex_count(1))];
                let mono: Vec<IntVec> = s.iter().map(|&i| kz.z_vertices()[i].clone()).collect();
                let c = BigInt::from(rng.gen_range(-3i64..=3));
                if !c.is_zero() {
                    q.add_term(mono, c).unwrap();
                }
            }
            if q.is_zero() {
                continue;
            }
            let d = d_z(&q).unwrap();
            let lhs = if d.is_zero() {
                IntChain::zero(0)
            } else {
                poly_to_chain_z(&d, &kz).unwrap()
            };
            let rhs = boundary_z(&kz, &poly_to_chain_z(&q, &kz).unwrap());
            check(lhs == rhs, "Z square does not commute")?;
        }

        // Smith normal form contract.
        for _ in 0..CASES {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let entries: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            let a = IntMatrix::from_rows(&entries);
            let snf = smith_normal_form(&a);
            check(snf.u.mul(&a).mul(&snf.v) == snf.d, "U*A*V != D")?;
            check(
                int_det(&snf.u).abs() == BigInt::from(1) && int_det(&snf.v).abs() == BigInt::from(1),
                "U or V not unimodular",
            )?;
            for w in snf.diagonal().windows(2) {
                let ok = if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    !w[1].is_negative() && (&w[1] % &w[0]).is_zero()
                };
                check(ok, "divisibility chain broken")?;
            }
        }

        // Unimodularity test against the minor gcd oracle.
        for _ in 0..CASES {
            let n = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=n);
            let vs: Vec<IntVec> = (0..k)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect())
                .collect();
            let mut sorted = vs.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != k {
                continue;
            }
            check(
                toribord::linalg::is_unimodular_set_z(&vs) == unimodular_minor_oracle(&vs, n),
                "unimodularity test disagrees with minor oracle",
            )?;
        }

        // Random valid pairs always produce d-closed polynomials.
        for _ in 0..CASES {
            let q = &models[rng.gen_range(0..models.len())];
            let sc = random_small_cover(&mut rng, q);
            let p = coloring_polynomial_z2(&sc).unwrap();
            check(d_gf2(&p).unwrap().is_zero(), "small cover coloring not d-closed")?;
            let qt = random_quasitoric(&mut rng, q);
            let phi = phi_quasitoric(&qt).unwrap();
            check(d_z(&phi).unwrap().is_zero(), "quasitoric data not d-closed")?;
        }

        // Connected sums are additive on every successful call.
        let mut successes = 0usize;
        for _ in 0..CASES {
            let tri = &models[0];
            let p1 = random_small_cover(&mut rng, tri);
            let a = random_invertible_gf2(&mut rng, 2);
            let p2 = apply_basis_change_z2(&p1, &a).unwrap();
            let v1 = rng.gen_range(0..tri.vertex_count());
            let v2 = rng.gen_range(0..tri.vertex_count());
            if let Ok(glued) = connect_sum_z2(&p1, v1, &p2, v2) {
                let sum = coloring_polynomial_z2(&p1)
                    .unwrap()
                    .add(&coloring_polynomial_z2(&p2).unwrap());
                check(
                    coloring_polynomial_z2(&glued).unwrap() == sum,
                    "GF(2) connected sum not additive",
                )?;
                successes += 1;
            }

            let q = &models[rng.gen_range(0..3)];
            let u1 = random_quasitoric(&mut rng, q);
            let mut u2 = random_quasitoric(&mut rng, q);
            if rng.gen_bool(0.5) {
                u2 = QuasitoricPair::new(u2.polytope.reversed(), u2.lambda.clone());
            }
            let v1 = rng.gen_range(0..q.vertex_count());
            let v2 = rng.gen_range(0..q.vertex_count());
            if let Ok(glued) = connect_sum_unitary(&u1, v1, &u2, v2) {
                let sum = phi_quasitoric(&u1).unwrap().add(&phi_quasitoric(&u2).unwrap());
                check(
                    phi_quasitoric(&glued).unwrap() == sum,
                    "unitary connected sum not additive",
                )?;
                successes += 1;
            }
        }
        check(successes > 0, "no connected sum ever succeeded")?;

        let _ = limits;
        Ok(())
    });
}

#[test]
fn criterion_7_rp2_generates() {
    criterion(7, "RP^2 generates the n=2 group", || {
        let g = fixed_point_data_z2(&rp2_pair()).map_err(|e| e.to_string())?;
        let k = build_universal_z2(2).map_err(|e| e.to_string())?;
        let coords = class_coordinates_z2(&g, &k).map_err(|e| e.to_string())?;
        check(
            coords == vec![1u8],
            &format!("class coordinates are {coords:?}, want [1]"),
        )
    });
}
