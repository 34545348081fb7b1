//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular over GF(2)")]
    SingularMatrix,
    #[error("matrix is not unimodular (|det| != 1)")]
    NotUnimodular,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("resource limit exceeded: {0} (set TORIBORD_MAX_CELLS or pass an explicit override to allow more)")]
    ResourceLimit(String),
    #[error("vector has wrong length: expected {expected}, got {got}")]
    BadVectorLength { expected: usize, got: usize },
    #[error("invalid complex: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainError {
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("cycle is not in the span of the given basis")]
    NotInSpan,
    #[error("chain references unknown simplex id {0} in dimension {1}")]
    BadSimplexId(usize, usize),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not essential: monomial {0} is not unimodular")]
    NotEssential(String),
    #[error("polynomial is not faithful (essential of degree n required)")]
    NotFaithful,
    #[error("vertex {0} is outside the complex bound")]
    VertexOutOfBound(String),
    #[error("monomial {0} is not a simplex of the complex")]
    MissingSimplex(String),
    #[error("vertex {0} is not a vertex of the complex")]
    MissingVertex(String),
    #[error("poly_to_chain requires degree >= 1")]
    DegreeZero,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BordismError {
    #[error("A_n evaluation produced a non-integer term: {0}")]
    IntegralityViolation(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ToricError {
    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),
    #[error("invalid characteristic pair: {0}")]
    InvalidPair(String),
    #[error("no facet matching at the chosen vertices: {0}")]
    NoMatching(String),
    #[error("connected sum produced an invalid pair: {0}")]
    InvalidResult(String),
    #[error("basis-change matrix is not invertible")]
    NotInvertible,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("file violates {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
