//! Exact rational arithmetic and canonical multivariate (Laurent) polynomials.

mod monomial;
mod parse;
mod polynomial;
mod ring;
mod scalar;

pub use monomial::Monomial;
pub use num_rational::BigRational as Rational;
pub use parse::parse_poly;
pub use polynomial::Poly;
pub use ring::{Ring, RingDescriptor, RingKind};
pub use scalar::{rational_to_f64, Scalar};


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("negative exponent on {var} in a polynomial ring{}", fmt_pos(.position))]
    NegativeExponent { var: String, position: Option<usize> },
    #[error("unknown variable {name}{}", fmt_pos(.position))]
    UnknownVariable { name: String, position: Option<usize> },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("expected {expected} exponents, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("no value assigned to variable {0}")]
    MissingAssignment(String),
    #[error("laurent variable {0} evaluated at zero")]
    ZeroLaurentValue(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact polynomial division")]
    NotDivisible,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

fn fmt_pos(p: &Option<usize>) -> String {
    p.map(|p| format!(" at position {p}")).unwrap_or_default()
}

#[cfg(test)]
mod proptests;
