//! Discriminant identities for towers of commutative algebras and closed-form
//! discriminants for rank-1 root data.

mod forms;
mod tower;

use thiserror::Error;

pub use forms::{Rank1RootDatum, WeylAction};
pub use tower::{
    check_discriminant_tower, check_nctrans, check_norm_transitivity, discriminant_sides, random_quadratic_tower,
    BSpec, CoverSpec, Over, Tower, TowerSpec,
};

use crate::algebra::AlgebraError;
use crate::poly::PolyError;

#[derive(Debug, Clone, Error)]
pub enum TowerError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} must be commutative")]
    NotCommutative(String),
    #[error("invalid tower: {0}")]
    Invalid(String),
    #[error("fundamental weights are required")]
    MissingWeights,
    #[error("exponent n/r = {n}/{r} is not an integer")]
    NonIntegralExponent { n: u32, r: u32 },
}

impl From<PolyError> for TowerError {
    fn from(e: PolyError) -> Self {
        TowerError::Algebra(e.into())
    }
}

#[cfg(test)]
mod tests;
