use std::collections::BTreeMap;
use std::fmt;

use super::{HeckeError, Rank1Datum};
use crate::poly::Poly;

/// `sum c_{lambda,w}(q) theta_lambda T_w` with `w` in `{e, s}` (`true` = `T`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<(Vec<i64>, bool), Poly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement { terms: BTreeMap::new() }
    }

    /// `c * theta_lambda T^w`; `c` must lie in `laurent[q]`.
    pub fn monomial(rd: &Rank1Datum, lambda: Vec<i64>, w: bool, c: Poly) -> Result<Self, HeckeError> {
        rd.check_lattice(&lambda)?;
        if c.ring() != rd.q_ring() {
            return Err(HeckeError::Coefficient(c.ring().to_string()));
        }
        let mut h = Self::zero();
        h.add_term(lambda, w, c);
        Ok(h)
    }

    pub fn one(rd: &Rank1Datum) -> Self {
        Self::theta(rd, &vec![0; rd.torus_rank()])
    }

    pub fn t(rd: &Rank1Datum) -> Self {
        Self::monomial(rd, vec![0; rd.torus_rank()], true, rd.q_ring().one()).expect("origin is in the lattice")
    }

    /// Panics if `lambda` is off the lattice; use [`Self::monomial`] to check.
    pub fn theta(rd: &Rank1Datum, lambda: &[i64]) -> Self {
        Self::monomial(rd, lambda.to_vec(), false, rd.q_ring().one()).expect("lattice point")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<i64>, bool), &Poly)> {
        self.terms.iter()
    }

    fn add_term(&mut self, lambda: Vec<i64>, w: bool, c: Poly) {
        if c.is_zero() {
            return;
        }
        let key = (lambda, w);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for ((l, w), c) in &other.terms {
            out.add_term(l.clone(), *w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for ((l, w), c) in &other.terms {
            out.add_term(l.clone(), *w, -c);
        }
        out
    }

    pub fn scale(&self, c: &Poly) -> HeckeElement {
        let mut out = Self::zero();
        for ((l, w), x) in &self.terms {
            out.add_term(l.clone(), *w, x * c);
        }
        out
    }

    /// Part `sum_lambda c theta_lambda` attached to `T^w`, as an element of
    /// the torus ring `R[q^{+-1}]`.
    pub fn component(&self, rd: &Rank1Datum, w: bool) -> Result<Poly, HeckeError> {
        let mut out = rd.ring().zero();
        for ((l, ww), c) in &self.terms {
            if *ww == w {
                out = out + c.embed(rd.ring())? * rd.theta(l);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((l, w), c)| {
                let exps: Vec<String> = l.iter().map(ToString::to_string).collect();
                format!("({c})*theta[{}]{}", exps.join(","), if *w { "*T" } else { "" })
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `T theta_mu` as terms `(nu, w, c)`:
/// `theta_{s mu} T + (q - 1)(theta_mu - theta_{s mu}) / (1 - theta_{-a^vee})`,
/// the quotient expanded as a finite geometric sum.
fn t_times_theta(rd: &Rank1Datum, mu: &[i64]) -> Vec<(Vec<i64>, bool, Poly)> {
    let q = rd.q_ring();
    let q_minus_1 = q.var("q").expect("q") - q.one();
    let mut out = vec![(rd.reflect(mu), true, q.one())];
    let k = rd.pairing(mu);
    if k > 0 {
        for j in 0..k {
            out.push((rd.shift(mu, -j), false, q_minus_1.clone()));
        }
    } else {
        for j in 1..=-k {
            out.push((rd.shift(mu, j), false, -q_minus_1.clone()));
        }
    }
    out
}

/// Product in `H`: `T^2 = (q - 1) T + q` and the Bernstein relation.
pub fn hecke_mul(rd: &Rank1Datum, h1: &HeckeElement, h2: &HeckeElement) -> Result<HeckeElement, HeckeError> {
    for ((l, _), c) in h1.terms.iter().chain(&h2.terms) {
        rd.check_lattice(l)?;
        if c.ring() != rd.q_ring() {
            return Err(HeckeError::Coefficient(c.ring().to_string()));
        }
    }
    let q = rd.q_ring();
    let qv = q.var("q").expect("q");
    let mut out = HeckeElement::zero();
    for ((lambda, a), c1) in &h1.terms {
        for ((mu, b), c2) in &h2.terms {
            let c = c1 * c2;
            let middle = if *a { t_times_theta(rd, mu) } else { vec![(mu.clone(), false, q.one())] };
            for (nu, w, c3) in middle {
                let base: Vec<i64> = lambda.iter().zip(&nu).map(|(x, y)| x + y).collect();
                let coeff = &c * &c3;
                if w && *b {
                    out.add_term(base.clone(), true, &coeff * &(&qv - &q.one()));
                    out.add_term(base, false, &coeff * &qv);
                } else {
                    out.add_term(base, w || *b, coeff);
                }
            }
        }
    }
    Ok(out)
}
