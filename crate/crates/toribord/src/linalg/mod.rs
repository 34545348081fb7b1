//! Exact linear algebra over GF(2) (bit-packed) and over Z (arbitrary
//! precision), shared by every other module.

pub mod gf2;
pub mod int;

pub use gf2::{
    gf2_dual_basis, gf2_kernel_basis, gf2_rank, gf2_solve, is_independent_gf2, GF2Matrix,
    GF2SpanTracker, GF2Vec,
};
pub use int::{
    int_det, int_dual_basis, int_solve, int_vec, is_unimodular_set_z, smith_normal_form, IntMatrix,
    IntVec, SNFResult, ZSpanTracker,
};
