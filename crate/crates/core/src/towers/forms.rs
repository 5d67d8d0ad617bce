//! Closed-form discriminants for rank-1 root data, as Laurent polynomials in
//! the torus variables and `q`.

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::TowerError;
use crate::poly::{Poly, Ring};

/// How the nontrivial Weyl element acts on torus exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeylAction {
    /// Swap the first two torus variables.
    Swap,
    /// Negate every torus exponent.
    Invert,
}

impl WeylAction {
    /// Image of a torus exponent vector (without the `q` slot).
    pub fn apply(self, exps: &[i64]) -> Vec<i64> {
        match self {
            WeylAction::Swap => {
                let mut v = exps.to_vec();
                v.swap(0, 1);
                v
            }
            WeylAction::Invert => exps.iter().map(|e| -e).collect(),
        }
    }
}

/// `Phi = {a, -a}` with `pi^{a^vee}` given by `coroot`, over
/// `laurent[torus_vars, q]`.
#[derive(Clone, Debug)]
pub struct Rank1RootDatum {
    pub name: String,
    pub torus_vars: Vec<String>,
    pub coroot: Vec<i64>,
    /// Smallest positive value of `<lambda, a>` on the lattice.
    pub pairing_step: u32,
    pub weyl_order: u32,
    pub weyl_action: WeylAction,
    pub fundamental_weights: Option<Vec<(Poly, u32)>>,
    ring: Ring,
}

impl Rank1RootDatum {
    pub fn new(
        name: &str,
        torus_vars: &[&str],
        coroot: Vec<i64>,
        pairing_step: u32,
        weyl_action: WeylAction,
        fundamental_weights: Option<Vec<(&str, u32)>>,
    ) -> Result<Self, TowerError> {
        if coroot.len() != torus_vars.len() || coroot.iter().all(|&e| e == 0) {
            return Err(TowerError::Invalid("coroot must be a nonzero exponent vector over the torus".into()));
        }
        if weyl_action == WeylAction::Swap && torus_vars.len() < 2 {
            return Err(TowerError::Invalid("swap action needs two torus variables".into()));
        }
        if pairing_step == 0 {
            return Err(TowerError::Invalid("pairing step must be positive".into()));
        }
        let mut vars = torus_vars.to_vec();
        vars.push("q");
        let ring = Ring::laurent(&vars);
        let mut rd = Rank1RootDatum {
            name: name.to_string(),
            torus_vars: torus_vars.iter().map(|s| s.to_string()).collect(),
            coroot,
            pairing_step,
            weyl_order: 2,
            weyl_action,
            fundamental_weights: None,
            ring,
        };
        if rd.weyl_action.apply(&rd.coroot).iter().zip(&rd.coroot).any(|(a, b)| *a != -b) {
            return Err(TowerError::Invalid("the Weyl action must negate the coroot".into()));
        }
        if let Some(ws) = fundamental_weights {
            let mut parsed = Vec::with_capacity(ws.len());
            for (text, d) in ws {
                let w = rd.ring.parse(text)?;
                if d == 0 {
                    return Err(TowerError::Invalid(format!("weight {text}: d must be positive")));
                }
                if rd.weyl(&w)? != w {
                    return Err(TowerError::Invalid(format!("weight {text} is not Weyl invariant")));
                }
                parsed.push((w, d));
            }
            rd.fundamental_weights = Some(parsed);
        }
        Ok(rd)
    }

    pub fn gl2() -> Self {
        Self::new("gl2", &["x1", "x2"], vec![1, -1], 1, WeylAction::Swap, Some(vec![("x1 + x2", 1), ("x1*x2", 1)]))
            .expect("valid preset")
    }

    pub fn pgl2() -> Self {
        Self::new("pgl2", &["x"], vec![2], 1, WeylAction::Invert, Some(vec![("x + x^-1", 1)])).expect("valid preset")
    }

    /// The SL2 example: lattice `x^{2Z}` inside `laurent[x]`, `omega = x + x^-1`, `d = 2`.
    pub fn sl2() -> Self {
        Self::new("sl2", &["x"], vec![2], 2, WeylAction::Invert, Some(vec![("x + x^-1", 2)])).expect("valid preset")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "gl2" => Some(Self::gl2()),
            "pgl2" => Some(Self::pgl2()),
            "sl2" => Some(Self::sl2()),
            _ => None,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    fn q_inverse(&self) -> Poly {
        let mut exps = vec![0; self.torus_vars.len()];
        exps.push(-1);
        self.ring.monomial(&exps, BigRational::one()).expect("q is a laurent variable")
    }

    /// `pi^{sign * a^vee}`.
    pub fn coroot_power(&self, sign: i64) -> Result<Poly, TowerError> {
        let mut exps: Vec<i64> = self.coroot.iter().map(|e| sign * e).collect();
        exps.push(0);
        Ok(self.ring.monomial(&exps, BigRational::one())?)
    }

    pub fn coroot_monomial(&self) -> Result<Poly, TowerError> {
        self.coroot_power(1)
    }

    /// Image of `p` under the nontrivial Weyl element.
    pub fn weyl(&self, p: &Poly) -> Result<Poly, TowerError> {
        let t = self.torus_vars.len();
        let action = self.weyl_action;
        Ok(p.map_exponents(|e| {
            let mut v = action.apply(&e[..t]);
            v.push(e[t]);
            v
        })?)
    }

    /// `e_{+-a} = 1 - q^{-1} pi^{+-a^vee}`.
    pub fn e_factor(&self, sign: i64) -> Result<Poly, TowerError> {
        Ok(self.ring.one() - self.q_inverse() * self.coroot_power(sign)?)
    }

    /// `d_{+-a} = 1 - pi^{+-a^vee}`.
    pub fn d_factor(&self, sign: i64) -> Result<Poly, TowerError> {
        Ok(self.ring.one() - self.coroot_power(sign)?)
    }

    /// Numerator and denominator of `I_w I_{w^-1}` over `R_w`: both are 1 for
    /// the identity and `(e_a e_{-a}, d_a d_{-a})` for the reflection. Not reduced.
    pub fn gk_product(&self, reflection: bool) -> Result<(Poly, Poly), TowerError> {
        if !reflection {
            return Ok((self.ring.one(), self.ring.one()));
        }
        Ok((self.e_factor(1)? * self.e_factor(-1)?, self.d_factor(1)? * self.d_factor(-1)?))
    }

    /// `d_{R/R^W} = (prod over positive roots of d_a)^{n_W}`, normalized.
    ///
    /// When the lattice pairs with `a` only in multiples of `m > 1`, `R` is
    /// generated over `R^W` by `theta` with `theta / s(theta) = pi^{m a^vee}`,
    /// so `d_a` is taken at `pi^{m a^vee}`.
    pub fn steinberg_discriminant(&self) -> Result<Poly, TowerError> {
        let step = self.ring.one() - self.coroot_power(self.pairing_step as i64)?;
        Ok(step.pow(self.weyl_order)?.normalize_up_to_unit())
    }

    /// `(e_a e_{-a})^{n_W^2 / 2}`, normalized.
    pub fn adjoint_discriminant_formula(&self) -> Result<Poly, TowerError> {
        let n = self.weyl_order;
        Ok(self.gk_product(true)?.0.pow(n * n / 2)?.normalize_up_to_unit())
    }

    /// `(e_a e_{-a})^{d n^2 / 2} * (prod omega_i^{d_i (d_i - 1)})^{n / r}`,
    /// normalized; requires `r | n`.
    pub fn gendisc_formula(&self, d_scale: u32, r_cover: u32) -> Result<Poly, TowerError> {
        let weights = self.fundamental_weights.as_ref().ok_or(TowerError::MissingWeights)?;
        let n = self.weyl_order;
        if d_scale == 0 || r_cover == 0 || !n.is_multiple_of(r_cover) {
            return Err(TowerError::NonIntegralExponent { n, r: r_cover });
        }
        let mut out = self.gk_product(true)?.0.pow(d_scale * n * n / 2)?;
        for (w, d) in weights {
            out = out * w.pow(d * (d - 1) * (n / r_cover))?;
        }
        Ok(out.normalize_up_to_unit())
    }
}
