use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FiberError;
use crate::poly::{PolyError, Ring, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// A point of the base: a value for every base variable.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    pub values: BTreeMap<String, Scalar>,
    pub mode: Mode,
    pub tolerance: f64,
}

/// On-disk form of a character, values kept as strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSpec {
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub values: BTreeMap<String, String>,
}

impl Character {
    pub fn exact<I, S>(values: I) -> Self
    where
        I: IntoIterator<Item = (S, Scalar)>,
        S: Into<String>,
    {
        Character {
            values: values.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            mode: Mode::Exact,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    /// Integer values in exact mode, e.g. `Character::ints(&[("t", 1)])`.
    pub fn ints(values: &[(&str, i64)]) -> Self {
        Self::exact(values.iter().map(|&(k, v)| (k, Scalar::int(v))))
    }

    pub fn float<I, S>(values: I, tolerance: f64) -> Self
    where
        I: IntoIterator<Item = (S, Scalar)>,
        S: Into<String>,
    {
        Character {
            values: values.into_iter().map(|(k, v)| (k.into(), Scalar::Complex(v.to_complex()))).collect(),
            mode: Mode::Float,
            tolerance,
        }
    }

    pub fn from_spec(spec: &CharacterSpec) -> Result<Self, FiberError> {
        let tolerance = spec.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(FiberError::InvalidCharacter(format!("tolerance must be a nonnegative number, got {tolerance}")));
        }
        let mut values = BTreeMap::new();
        for (name, text) in &spec.values {
            let parsed = match spec.mode {
                Mode::Exact => Scalar::parse_exact(text),
                Mode::Float => Scalar::parse_complex(text),
            };
            let value = parsed.map_err(|e| FiberError::InvalidCharacter(format!("values.{name}: {e}")))?;
            values.insert(name.clone(), value);
        }
        Ok(Character { values, mode: spec.mode, tolerance })
    }

    pub fn to_spec(&self) -> CharacterSpec {
        CharacterSpec {
            mode: self.mode,
            tolerance: (self.mode == Mode::Float).then_some(self.tolerance),
            values: self.values.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
        }
    }

    /// Values in the ring's variable order, converted to the character's mode.
    pub fn values_for(&self, ring: &Ring) -> Result<Vec<Scalar>, FiberError> {
        let mut out = Vec::with_capacity(ring.nvars());
        for name in &ring.vars {
            let v = self
                .values
                .get(name)
                .ok_or_else(|| FiberError::Poly(PolyError::MissingAssignment(name.clone())))?;
            if ring.is_laurent() && v.is_zero() {
                return Err(FiberError::Poly(PolyError::ZeroLaurentValue(name.clone())));
            }
            out.push(match (self.mode, v) {
                (Mode::Exact, Scalar::Complex(_)) => return Err(FiberError::ModeMismatch),
                (Mode::Float, v) => Scalar::Complex(v.to_complex()),
                (Mode::Exact, v) => v.clone(),
            });
        }
        if let Some(extra) = self.values.keys().find(|k| ring.var_index(k).is_none()) {
            return Err(FiberError::InvalidCharacter(format!("variable {extra} is not in the base ring")));
        }
        Ok(out)
    }

    /// Working tolerance: the character's own in float mode, the default in exact mode.
    pub fn working_tolerance(&self) -> f64 {
        match self.mode {
            Mode::Exact => DEFAULT_TOLERANCE,
            Mode::Float => self.tolerance,
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_spec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = CharacterSpec::deserialize(d)?;
        Character::from_spec(&spec).map_err(serde::de::Error::custom)
    }
}
