use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::PolyError;

/// A value of a base element at a point: exact rational or complex float.
///
/// Mixing an exact operand with a float operand promotes to float.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Complex(Complex64),
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Huge numerator/denominator: fall back on a ratio of floats.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(v.into()))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Complex(Complex64::new(re, im))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Complex(c) => c.is_zero(),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::Exact(BigRational::one()),
            Scalar::Complex(_) => Scalar::Complex(Complex64::one()),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(r) => Complex64::new(rational_to_f64(r), 0.0),
            Scalar::Complex(c) => *c,
        }
    }

    pub fn abs(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(&r.abs()),
            Scalar::Complex(c) => c.norm(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Complex(_) => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Exact(r) => Scalar::Exact(r.recip()),
            Scalar::Complex(c) => Scalar::Complex(c.inv()),
        })
    }

    pub fn powi(&self, k: i64) -> Result<Scalar, PolyError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Parses `"p/q"` as an exact rational.
    pub fn parse_exact(text: &str) -> Result<Scalar, PolyError> {
        parse_rational(text.trim()).map(Scalar::Exact)
    }

    /// Parses a decimal complex literal such as `"1.5"`, `"2-3i"`, `"-i"` or `"0.5+2e-3i"`.
    pub fn parse_complex(text: &str) -> Result<Scalar, PolyError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || PolyError::Syntax { position: 0, message: format!("invalid complex literal {text:?}") };
        if s.is_empty() {
            return Err(bad());
        }
        let Some(body) = s.strip_suffix('i') else {
            return s.parse::<f64>().map(|re| Scalar::complex(re, 0.0)).map_err(|_| bad());
        };
        // Split at the last sign that is not the leading sign and not part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E') {
                split = Some(i);
                break;
            }
        }
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let im = match im_part {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => t.parse::<f64>().map_err(|_| bad())?,
        };
        let re = re_part.parse::<f64>().map_err(|_| bad())?;
        Ok(Scalar::complex(re, im))
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational, PolyError> {
    let bad = |m: &str| PolyError::Syntax { position: 0, message: format!("{m}: {text:?}") };
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text.trim(), None),
    };
    let numer = n.parse::<num_bigint::BigInt>().map_err(|_| bad("invalid rational"))?;
    let denom = match d {
        Some(d) if d.starts_with('-') || d.starts_with('+') => return Err(bad("invalid denominator")),
        Some(d) => d.parse::<num_bigint::BigInt>().map_err(|_| bad("invalid denominator"))?,
        None => 1.into(),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.$method(b)),
                    (a, b) => Scalar::Complex(a.to_complex().$method(b.to_complex())),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Complex(c) => Scalar::Complex(-c),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Complex(c) => {
                if c.im == 0.0 {
                    write!(f, "{:e}", c.re)
                } else {
                    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
                    write!(f, "{:e}{sign}{:e}i", c.re, c.im.abs())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
