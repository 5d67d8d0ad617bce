use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError, Ring, Scalar};

/// A multivariate (Laurent) polynomial with rational coefficients in canonical form.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomials with no zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly { ring, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, summing repeats.
    pub fn from_terms(
        ring: Ring,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<Self, PolyError> {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            if m.exponents().len() != p.ring.nvars() {
                return Err(PolyError::Arity { expected: p.ring.nvars(), found: m.exponents().len() });
            }
            if !p.ring.is_laurent() {
                if let Some(i) = m.exponents().iter().position(|&e| e < 0) {
                    return Err(PolyError::NegativeExponent {
                        var: p.ring.vars[i].clone(),
                        position: None,
                    });
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exps: &[i64]) -> BigRational {
        self.terms.get(&Monomial::new(exps.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant value, if the polynomial has no non-trivial monomials.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.iter().next().filter(|(m, _)| m.is_one()).map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut out = Poly::zero(self.ring.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Result<Poly, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| Ok((k.checked_mul(m)?, c.clone())))
            .collect::<Result<Vec<_>, PolyError>>()?;
        Poly::from_terms(self.ring.clone(), terms)
    }

    pub fn pow(&self, k: u32) -> Result<Poly, PolyError> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return Poly::from_terms(self.ring.clone(), [(m.checked_pow(k)?, num_traits::pow(c.clone(), k as usize))]);
        }
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Componentwise minimum exponent over the support (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i64> {
        let n = self.ring.nvars();
        let mut mins: Option<Vec<i64>> = None;
        for m in self.terms.keys() {
            match &mut mins {
                None => mins = Some(m.exponents().to_vec()),
                Some(v) => v.iter_mut().zip(m.exponents()).for_each(|(a, b)| *a = (*a).min(*b)),
            }
        }
        mins.unwrap_or_else(|| vec![0; n])
    }

    /// Applies `f` to every exponent vector. The result is re-canonicalized.
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Result<Poly, PolyError> {
        Poly::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(m, c)| (Monomial::new(f(m.exponents())), c.clone())),
        )
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn embed(&self, target: &Ring) -> Result<Poly, PolyError> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.ring.nvars());
        for v in &self.ring.vars {
            map.push(target.var_index(v));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                match map[i] {
                    Some(j) => exps[j] = e,
                    None if e == 0 => {}
                    None => {
                        return Err(PolyError::UnknownVariable {
                            name: self.ring.vars[i].clone(),
                            position: None,
                        })
                    }
                }
            }
            terms.push((Monomial::new(exps), c.clone()));
        }
        Poly::from_terms(target.clone(), terms)
    }

    /// Evaluates at a point. Exact inputs give an exact result.
    pub fn eval(&self, point: &BTreeMap<String, Scalar>) -> Result<Scalar, PolyError> {
        let values = self
            .ring
            .vars
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| PolyError::MissingAssignment(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.eval_slice(&values)
    }

    /// Evaluates with values given in ring-variable order.
    pub fn eval_slice(&self, values: &[Scalar]) -> Result<Scalar, PolyError> {
        if values.len() != self.ring.nvars() {
            return Err(PolyError::Arity { expected: self.ring.nvars(), found: values.len() });
        }
        let exact = values.iter().all(Scalar::is_exact);
        let mut acc = if exact { Scalar::int(0) } else { Scalar::complex(0.0, 0.0) };
        for (m, c) in &self.terms {
            let mut t = Scalar::Exact(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e < 0 && values[i].is_zero() {
                    return Err(PolyError::ZeroLaurentValue(self.ring.vars[i].clone()));
                }
                t = &t * &values[i].powi(e)?;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Sum of absolute values of the evaluated terms; the natural scale for
    /// deciding whether a float evaluation vanishes.
    pub fn eval_magnitude(&self, values: &[Scalar]) -> Result<f64, PolyError> {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut t = super::scalar::rational_to_f64(&c.abs());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e != 0 {
                    if e < 0 && values[i].is_zero() {
                        return Err(PolyError::ZeroLaurentValue(self.ring.vars[i].clone()));
                    }
                    t *= values[i].abs().powi(e as i32);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Canonical representative of the unit orbit `A^x · self`.
    ///
    /// Laurent units are `c·monomial`, so exponents are shifted to have minimum
    /// zero in every variable; polynomial units are nonzero constants. The
    /// graded-lex leading coefficient is then made 1.
    pub fn normalize_up_to_unit(&self) -> Poly {
        let Some((_, lead)) = self.leading_term() else {
            return self.clone();
        };
        let inv = lead.recip();
        if self.ring.is_laurent() {
            let shift = self.min_exponents();
            Poly {
                ring: self.ring.clone(),
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let exps = m.exponents().iter().zip(&shift).map(|(a, b)| a - b).collect();
                        (Monomial::new(exps), c * &inv)
                    })
                    .collect(),
            }
        } else {
            self.scale(&inv)
        }
    }

    pub fn equal_up_to_unit(&self, other: &Poly) -> Result<bool, PolyError> {
        self.check_ring(other)?;
        Ok(self.normalize_up_to_unit() == other.normalize_up_to_unit())
    }

    /// Whether the polynomial is a unit of its ring.
    pub fn is_unit(&self) -> bool {
        match self.terms.len() {
            1 => self.ring.is_laurent() || self.terms.keys().next().unwrap().is_one(),
            _ => false,
        }
    }

    /// Exact quotient `self / divisor`; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(divisor)?;
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.ring.is_laurent() {
            // Shift both operands into N^n; a Laurent quotient then becomes a
            // polynomial quotient times the ratio of the two shifts.
            let sf = Monomial::new(self.min_exponents());
            let sg = Monomial::new(divisor.min_exponents());
            let f = self.shift_down(&sf)?;
            let g = divisor.shift_down(&sg)?;
            let q = long_division(&f, &g)?;
            q.mul_monomial(&sf.checked_div(&sg)?)
        } else {
            long_division(self, divisor)
        }
    }

    fn shift_down(&self, m: &Monomial) -> Result<Poly, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| Ok((k.checked_div(m)?, c.clone())))
            .collect::<Result<Vec<_>, PolyError>>()?;
        Ok(Poly { ring: self.ring.clone(), terms: terms.into_iter().collect() })
    }
}

/// Division in `Q[x1..xn]` on supports in `N^n`. Terminates because the leading
/// monomial strictly decreases in a well-order.
fn long_division(f: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    let (gm, gc) = g.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let mut rem = f.clone();
    let mut quot = Poly::zero(f.ring.clone());
    while let Some((m, c)) = rem.leading_term() {
        if !m.divisible_by(&gm) {
            return Err(PolyError::NotDivisible);
        }
        let tm = m.checked_div(&gm)?;
        let tc = c / &gc;
        for (k, a) in &g.terms {
            rem.add_term(k.checked_mul(&tm)?, -(a * &tc));
        }
        quot.add_term(tm, tc);
    }
    Ok(quot)
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;

            /// Panics on ring mismatch or exponent overflow; use the `checked_*`
            /// variant to handle those as errors.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait<Poly> for Poly {
            type Output = Poly;

            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Poly> for Poly {
            type Output = Poly;

            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Grammar-conformant output, terms in descending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if m.is_one() || !abs.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{e}", self.ring.vars[i])),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
