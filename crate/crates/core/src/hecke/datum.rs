use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::HeckeError;
use crate::poly::{Poly, Ring};
use crate::towers::Rank1RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Gl2,
    Sl2,
    Pgl2,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Gl2, Preset::Sl2, Preset::Pgl2];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Gl2 => "gl2",
            Preset::Sl2 => "sl2",
            Preset::Pgl2 => "pgl2",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self, HeckeError> {
        match s {
            "gl2" => Ok(Preset::Gl2),
            "sl2" => Ok(Preset::Sl2),
            "pgl2" => Ok(Preset::Pgl2),
            other => Err(HeckeError::UnknownPreset(other.to_string())),
        }
    }
}

/// A rank-1 Iwahori-Hecke algebra in the Bernstein presentation, with the
/// basis `{rho_i T_w}` of `H` over its center.
#[derive(Clone, Debug)]
pub struct Rank1Datum {
    pub preset: Preset,
    pub root: Rank1RootDatum,
    /// Lattice exponents must be multiples of this (2 for the `sl2` lattice).
    pub lattice_step: i64,
    /// Exponent vectors of `rho_1 = 1, rho_2, ...` with `R = sum R^W rho_i`.
    pub center_basis: Vec<Vec<i64>>,
    q_ring: Ring,
}

impl Rank1Datum {
    pub fn new(preset: Preset) -> Self {
        let (root, lattice_step, rho2) = match preset {
            Preset::Gl2 => (Rank1RootDatum::gl2(), 1, vec![1, 0]),
            Preset::Pgl2 => (Rank1RootDatum::pgl2(), 1, vec![1]),
            Preset::Sl2 => (Rank1RootDatum::sl2(), 2, vec![2]),
        };
        let zero = vec![0; rho2.len()];
        Rank1Datum { preset, root, lattice_step, center_basis: vec![zero, rho2], q_ring: Ring::laurent(&["q"]) }
    }

    /// Torus variables followed by `q`, all invertible.
    pub fn ring(&self) -> &Ring {
        self.root.ring()
    }

    /// Coefficient ring of Hecke elements: `laurent[q]`.
    pub fn q_ring(&self) -> &Ring {
        &self.q_ring
    }

    pub fn torus_rank(&self) -> usize {
        self.root.torus_vars.len()
    }

    /// `m = d * |W|`.
    pub fn hecke_rank(&self) -> usize {
        self.center_basis.len() * 2
    }

    pub fn check_lattice(&self, lambda: &[i64]) -> Result<(), HeckeError> {
        if lambda.len() != self.torus_rank() || lambda.iter().any(|e| e % self.lattice_step != 0) {
            return Err(HeckeError::Lattice { preset: self.preset, lambda: lambda.to_vec() });
        }
        Ok(())
    }

    pub fn reflect(&self, lambda: &[i64]) -> Vec<i64> {
        self.root.weyl_action.apply(lambda)
    }

    /// `<lambda, a>`, defined by `lambda - s(lambda) = <lambda, a> a^vee`.
    pub fn pairing(&self, lambda: &[i64]) -> i64 {
        let s = self.reflect(lambda);
        let (i, c) = self.root.coroot.iter().enumerate().find(|(_, c)| **c != 0).expect("nonzero coroot");
        let k = (lambda[i] - s[i]) / c;
        debug_assert!(lambda.iter().zip(&s).zip(&self.root.coroot).all(|((l, s), c)| l - s == k * c));
        k
    }

    /// `lambda + k a^vee`.
    pub fn shift(&self, lambda: &[i64], k: i64) -> Vec<i64> {
        lambda.iter().zip(&self.root.coroot).map(|(l, c)| l + k * c).collect()
    }

    /// `theta_lambda` as a monomial of [`Self::ring`].
    pub fn theta(&self, lambda: &[i64]) -> Poly {
        let mut exps = lambda.to_vec();
        exps.push(0);
        self.ring().monomial(&exps, BigRational::one()).expect("laurent ring")
    }

    /// The Weyl involution on [`Self::ring`] (fixes `q`).
    pub fn weyl(&self, p: &Poly) -> Poly {
        self.root.weyl(p).expect("exponent vectors stay in range")
    }

    pub fn is_invariant(&self, p: &Poly) -> bool {
        &self.weyl(p) == p
    }
}
