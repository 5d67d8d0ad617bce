use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::FiberError;
use crate::poly::{rational_to_f64, Scalar};

/// Scalars of a specialized algebra: exact rationals or complex floats.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn magnitude(&self) -> f64;
    fn from_scalar(s: &Scalar) -> Result<Self, FiberError>;
    fn from_rational(r: &BigRational) -> Self;
    fn to_scalar(&self) -> Scalar;
    fn to_complex(&self) -> Complex64;

    /// Exact zero in exact mode; `|x| <= threshold` otherwise.
    fn negligible(&self, threshold: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= threshold
        }
    }
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn magnitude(&self) -> f64 {
        rational_to_f64(self).abs()
    }

    fn from_scalar(s: &Scalar) -> Result<Self, FiberError> {
        s.as_rational().cloned().ok_or(FiberError::ModeMismatch)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl Field for Complex64 {
    const EXACT: bool = false;

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn from_scalar(s: &Scalar) -> Result<Self, FiberError> {
        Ok(s.to_complex())
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::Complex(*self)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}
