//! Finite free algebras presented by structure constants: trace, norm, trace
//! form, discriminant and determinantal ideals.

pub mod constructions;
mod det;
mod finite;
mod matrix;
mod spec;

use std::fmt;

use thiserror::Error;

pub use det::{det_bareiss, det_cofactor, CommutativeRing};
pub use finite::{AlgebraElement, FiniteAlgebra, DEFAULT_MINOR_BUDGET};
pub use matrix::BaseMatrix;
pub use spec::AlgebraSpec;

pub(crate) use spec::parse_vector;

use crate::poly::PolyError;

/// One failed algebra axiom, with basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroUnit,
    LeftUnit(usize),
    RightUnit(usize),
    Associativity(usize, usize, usize),
    Commutativity(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroUnit => write!(f, "unit vector is zero"),
            Violation::LeftUnit(i) => write!(f, "1*e{i} != e{i}"),
            Violation::RightUnit(i) => write!(f, "e{i}*1 != e{i}"),
            Violation::Associativity(i, j, k) => write!(f, "(e{i}e{j})e{k} != e{i}(e{j}e{k})"),
            Violation::Commutativity(i, j) => write!(f, "e{i}e{j} != e{j}e{i}"),
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{field}: {message}")]
    Field { field: String, message: String },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("algebra axioms violated: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("element mismatch: {0}")]
    ElementMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error(
        "{minors} minors exceed the budget of {budget}; \
         use sampled-rank stratification (stratify --chars) instead"
    )]
    MinorBudget { minors: u128, budget: u128 },
    #[error("basis change matrix is singular")]
    Singular,
    #[error("algebra must be commutative")]
    NotCommutative,
}

impl AlgebraError {
    pub(crate) fn field(field: impl Into<String>, e: PolyError) -> Self {
        AlgebraError::Field { field: field.into(), message: e.to_string() }
    }
}
