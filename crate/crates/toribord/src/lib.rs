//! Exact computation of equivariant bordism groups of 2-torus manifolds and
//! unitary toric manifolds, through universal complexes of unimodular
//! subsets and their homology.
//!
//! The crate is organized as:
//! - [`linalg`]: exact GF(2) and integer linear algebra kernels.
//! - [`complex`]: the universal complexes X(Z_2^n) and box-truncated X(Z^n).
//! - [`homology`]: chain complexes, reduced homology, cycle spaces.
//! - [`poly`]: fixed-point-data polynomials, differentials, dualization.
//! - [`bordism`]: realizability checks, dimension formulas, class coordinates.
//! - [`toric`]: small-cover and quasitoric characteristic pairs.
//! - [`io`]: the line-oriented text formats used by the CLI.

pub mod bordism;
pub mod complex;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod toric;
