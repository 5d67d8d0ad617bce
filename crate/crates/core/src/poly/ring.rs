use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Monomial, Poly, PolyError};

/// Whether negative exponents are admitted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Laurent,
    Polynomial,
}

/// A coordinate ring `Q[v1, ..., vk]` or `Q[v1^±, ..., vk^±]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub kind: RingKind,
    pub vars: Vec<String>,
}

impl RingDescriptor {
    pub fn validate(&self) -> Result<(), PolyError> {
        for (i, v) in self.vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(PolyError::InvalidRing(format!("invalid variable name {v:?}")));
            }
            if self.vars[..i].contains(v) {
                return Err(PolyError::InvalidRing(format!("duplicate variable {v:?}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            RingKind::Laurent => "laurent",
            RingKind::Polynomial => "polynomial",
        };
        write!(f, "{kind}[{}]", self.vars.join(","))
    }
}

/// Shared handle to a validated [`RingDescriptor`].
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingDescriptor>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl Deref for Ring {
    type Target = RingDescriptor;

    fn deref(&self) -> &RingDescriptor {
        &self.0
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<RingDescriptor> for Ring {
    type Error = PolyError;

    fn try_from(desc: RingDescriptor) -> Result<Self, PolyError> {
        desc.validate()?;
        Ok(Ring(Arc::new(desc)))
    }
}

impl Ring {
    pub fn new<S: Into<String>>(
        kind: RingKind,
        vars: impl IntoIterator<Item = S>,
    ) -> Result<Self, PolyError> {
        RingDescriptor { kind, vars: vars.into_iter().map(Into::into).collect() }.try_into()
    }

    pub fn laurent(vars: &[&str]) -> Self {
        Self::new(RingKind::Laurent, vars.iter().copied()).expect("valid variable names")
    }

    pub fn polynomial(vars: &[&str]) -> Self {
        Self::new(RingKind::Polynomial, vars.iter().copied()).expect("valid variable names")
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_laurent(&self) -> bool {
        self.kind == RingKind::Laurent
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.clone())
    }

    pub fn one(&self) -> Poly {
        self.constant(BigRational::from_integer(1.into()))
    }

    pub fn constant(&self, c: BigRational) -> Poly {
        Poly::from_terms(self.clone(), [(Monomial::one(self.nvars()), c)])
            .expect("constant term is always admissible")
    }

    pub fn int(&self, c: i64) -> Poly {
        self.constant(BigRational::from_integer(c.into()))
    }

    pub fn var(&self, name: &str) -> Result<Poly, PolyError> {
        let idx = self.var_index(name).ok_or_else(|| PolyError::UnknownVariable {
            name: name.to_string(),
            position: None,
        })?;
        let mut exps = vec![0; self.nvars()];
        exps[idx] = 1;
        self.monomial(&exps, BigRational::from_integer(1.into()))
    }

    pub fn monomial(&self, exps: &[i64], coeff: BigRational) -> Result<Poly, PolyError> {
        if exps.len() != self.nvars() {
            return Err(PolyError::Arity { expected: self.nvars(), found: exps.len() });
        }
        Poly::from_terms(self.clone(), [(Monomial::new(exps.to_vec()), coeff)])
    }

    pub fn parse(&self, text: &str) -> Result<Poly, PolyError> {
        super::parse::parse_poly(text, self)
    }
}
