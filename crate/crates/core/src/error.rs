//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a finite crystallographic Coxeter spec: {0}")]
    InvalidSystem(String),

    #[error("generator index {0} out of range 1..={1}")]
    GeneratorOutOfRange(usize, usize),

    #[error("elements are not comparable as required: {0}")]
    NotComparable(String),

    #[error("{0} is not a facet of the complex")]
    NotAFacet(String),

    #[error("complex is not pure: facet sizes {0} and {1} differ")]
    NotPure(usize, usize),

    #[error("reflection order violates the dihedral condition: {0}")]
    InvalidReflectionOrder(String),

    #[error("reflection order does not have the required W_P placement")]
    WrongPlacement,

    #[error("model search did not stabilize after {0} iterations")]
    ModelSearchDiverged(usize),

    #[error("elimination exceeded the degree bound {0}; raise RLAB_DEGREE_BOUND")]
    DegreeBoundExceeded(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
