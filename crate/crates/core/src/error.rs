use thiserror::Error;

use crate::seed::Label;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed seed: {0}")]
    MalformedSeed(String),

    #[error("unknown label {0}")]
    UnknownLabel(Label),

    #[error("permutation {0} is not a symmetry of the seed")]
    NotASymmetry(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("Langlands dual exchange matrix is not integral at ({0}, {1})")]
    NonIntegralDual(usize, usize),

    #[error("invalid word step {index}: {reason}")]
    InvalidWordStep { index: usize, reason: String },

    #[error("word does not return to the starting seed")]
    WordNotClosed,

    #[error("nonpositive input coordinate at index {0}")]
    NonPositivePoint(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("elements belong to different quantum tori")]
    SeedMismatch,

    #[error("operation not representable in the factored calculus: {0}")]
    NotRepresentable(String),

    #[error("quadrature configuration does not converge: {0}")]
    Nonconvergent(String),

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("unknown identity {0}")]
    UnknownIdentity(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
