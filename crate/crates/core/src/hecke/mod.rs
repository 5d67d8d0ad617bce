//! Rank-1 Iwahori-Hecke algebras (`gl2`, `sl2`, `pgl2`) in the Bernstein
//! presentation, written as free algebras of rank 4 over their centers.

mod center;
mod datum;
mod element;

use thiserror::Error;

pub use center::{
    closed_form, compare_closed_form, coordinates_over_center, hecke_algebra, hecke_basis, hecke_discriminant,
    left_mult_over_center, principal_series_irreducible, reduce_to_center, restricted_algebra_r_over_rw, verdict_for,
    Comparison, Irreducibility, Verdict,
};
pub use datum::{Preset, Rank1Datum};
pub use element::{hecke_mul, HeckeElement};

use crate::algebra::AlgebraError;
use crate::fiber::FiberError;
use crate::poly::PolyError;
use crate::towers::TowerError;

#[derive(Debug, Clone, Error)]
pub enum HeckeError {
    #[error("unknown preset {0:?} (expected gl2, sl2 or pgl2)")]
    UnknownPreset(String),
    #[error("exponent vector {lambda:?} is not in the {preset} lattice")]
    Lattice { preset: Preset, lambda: Vec<i64> },
    #[error("coefficient in {0}, expected laurent[q]")]
    Coefficient(String),
    #[error("cannot write {0} over the center in the chosen basis")]
    Reduction(String),
    #[error("matrix entry ({row},{col}) is not Weyl invariant")]
    NotInvariant { row: usize, col: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

impl From<PolyError> for HeckeError {
    fn from(e: PolyError) -> Self {
        HeckeError::Algebra(e.into())
    }
}

#[cfg(test)]
mod tests;
