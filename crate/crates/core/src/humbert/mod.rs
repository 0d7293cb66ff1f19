//! Humbert singular relations: lattices, discriminant forms, classification
//! and reduction to normalized form.

mod lattice;
mod normalize;
mod relation;

pub use lattice::*;
pub use normalize::*;
pub use relation::*;

use crate::siegel::SiegelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HumbertError {
    #[error("relation is not satisfied by the given point")]
    RelationNotSatisfied,
    #[error("conjugated representation lost the symmetric-endomorphism shape")]
    ShapeViolation,
    #[error("relation lattice is empty")]
    EmptyLattice,
    #[error("invalid discriminant {0}: must be positive and congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(i128),
    #[error("relation must be primitive")]
    NotPrimitive,
    #[error("search budget exhausted after {0} states")]
    SearchBudgetExceeded(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("integer overflow")]
    Overflow,
    #[error(transparent)]
    Siegel(#[from] SiegelError),
}
