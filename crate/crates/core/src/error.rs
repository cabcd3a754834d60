use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("leg count mismatch: expected {expected}, found {found}")]
    LegMismatch { expected: usize, found: usize },

    #[error("element with {terms} terms is not a unit")]
    NotAUnit { terms: usize },

    #[error("leg {leg} out of range for an element with {legs} legs")]
    LegOutOfRange { leg: usize, legs: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("coproduct of generator g{generator} is {found}, expected {expected}")]
    NotForcedForm {
        generator: usize,
        expected: String,
        found: String,
    },

    #[error("no monomial twist trivializes the presentation: {0}")]
    NoMonomialTwist(String),

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("map does not intertwine the automorphisms of its source and target")]
    NotAMorphism,

    #[error("parse error: {0}")]
    Parse(String),
}
