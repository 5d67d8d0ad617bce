use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, BaseMatrix, Violation};
use crate::poly::{Poly, PolyError, Ring};

/// Default cap on the number of minors enumerated by [`FiniteAlgebra::determinantal_ideal`].
pub const DEFAULT_MINOR_BUDGET: u128 = 20_000;

/// A free algebra of finite rank over a coordinate ring, presented by
/// structure constants: `e_i * e_j = sum_k table[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    base: Ring,
    basis_names: Vec<String>,
    unit: Vec<Poly>,
    table: Vec<Vec<Vec<Poly>>>,
    commutative: bool,
    basis_traces: OnceLock<Vec<Poly>>,
    gram: OnceLock<BaseMatrix>,
    raw_discriminant: OnceLock<Poly>,
}

/// An element of a [`FiniteAlgebra`] in coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub coords: Vec<Poly>,
}

impl FiniteAlgebra {
    /// Checks shapes and rings only; use [`FiniteAlgebra::validate`] for the axioms.
    pub fn new(
        base: Ring,
        basis_names: Vec<String>,
        unit: Vec<Poly>,
        table: Vec<Vec<Vec<Poly>>>,
        commutative: bool,
    ) -> Result<Self, AlgebraError> {
        let n = basis_names.len();
        if n == 0 {
            return Err(AlgebraError::Shape("rank must be positive".into()));
        }
        if unit.len() != n {
            return Err(AlgebraError::Shape(format!("unit has {} coordinates, rank is {n}", unit.len())));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(AlgebraError::Shape(format!("multiplication table must be {n}x{n}x{n}")));
        }
        let all = unit.iter().chain(table.iter().flatten().flatten());
        if let Some(p) = all.into_iter().find(|p| p.ring() != &base) {
            return Err(PolyError::RingMismatch { left: base.to_string(), right: p.ring().to_string() }.into());
        }
        Ok(FiniteAlgebra {
            base,
            basis_names,
            unit,
            table,
            commutative,
            basis_traces: OnceLock::new(),
            gram: OnceLock::new(),
            raw_discriminant: OnceLock::new(),
        })
    }

    /// Builds the table from a closure giving the coordinates of `e_i * e_j`.
    pub fn from_fn(
        base: Ring,
        basis_names: Vec<String>,
        unit: Vec<Poly>,
        commutative: bool,
        mut product: impl FnMut(usize, usize) -> Vec<Poly>,
    ) -> Result<Self, AlgebraError> {
        let n = basis_names.len();
        let table = (0..n).map(|i| (0..n).map(|j| product(i, j)).collect()).collect();
        Self::new(base, basis_names, unit, table, commutative)
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// Coordinates of `e_i * e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Poly] {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<Vec<Poly>>] {
        &self.table
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement { coords: self.unit.clone() }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let coords = (0..self.rank()).map(|k| if k == i { self.base.one() } else { self.base.zero() }).collect();
        AlgebraElement { coords }
    }

    /// `a * 1` for a base element `a`.
    pub fn scalar(&self, a: &Poly) -> AlgebraElement {
        AlgebraElement { coords: self.unit.iter().map(|u| a * u).collect() }
    }

    pub fn element(&self, coords: Vec<Poly>) -> Result<AlgebraElement, AlgebraError> {
        let e = AlgebraElement { coords };
        self.check_element(&e)?;
        Ok(e)
    }

    fn check_element(&self, u: &AlgebraElement) -> Result<(), AlgebraError> {
        if u.coords.len() != self.rank() {
            return Err(AlgebraError::ElementMismatch(format!(
                "element has {} coordinates, algebra has rank {}",
                u.coords.len(),
                self.rank()
            )));
        }
        if let Some(p) = u.coords.iter().find(|p| p.ring() != &self.base) {
            return Err(AlgebraError::ElementMismatch(format!("coordinate in {} over base {}", p.ring(), self.base)));
        }
        Ok(())
    }

    pub fn add(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coords: u.coords.iter().zip(&v.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.check_element(u)?;
        self.check_element(v)?;
        Ok(self.mul_unchecked(u, v))
    }

    pub(crate) fn mul_unchecked(&self, u: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        let n = self.rank();
        let mut out = vec![self.base.zero(); n];
        for (i, ui) in u.coords.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.coords.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                for (k, s) in self.table[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = &out[k] + &(&c * s);
                    }
                }
            }
        }
        AlgebraElement { coords: out }
    }

    /// Matrix of `x -> u x`; column `j` holds the coordinates of `u e_j`.
    pub fn left_mult_matrix(&self, u: &AlgebraElement) -> Result<BaseMatrix, AlgebraError> {
        self.check_element(u)?;
        let cols: Vec<AlgebraElement> =
            (0..self.rank()).map(|j| self.mul_unchecked(u, &self.basis_element(j))).collect();
        Ok(BaseMatrix::from_fn(self.base.clone(), self.rank(), self.rank(), |i, j| cols[j].coords[i].clone()))
    }

    /// `tr(e_i)` for each basis element: `sum_j table[i][j][j]`.
    pub fn basis_traces(&self) -> &[Poly] {
        self.basis_traces.get_or_init(|| {
            (0..self.rank())
                .map(|i| (0..self.rank()).fold(self.base.zero(), |acc, j| acc + &self.table[i][j][j]))
                .collect()
        })
    }

    pub fn trace(&self, u: &AlgebraElement) -> Result<Poly, AlgebraError> {
        self.check_element(u)?;
        Ok(self.trace_unchecked(u))
    }

    fn trace_unchecked(&self, u: &AlgebraElement) -> Poly {
        u.coords.iter().zip(self.basis_traces()).fold(self.base.zero(), |acc, (a, t)| acc + a * t)
    }

    pub fn norm(&self, u: &AlgebraElement) -> Result<Poly, AlgebraError> {
        self.left_mult_matrix(u)?.det()
    }

    /// The trace form `G_ij = tr(e_i e_j)`.
    pub fn gram_matrix(&self) -> &BaseMatrix {
        self.gram.get_or_init(|| {
            let n = self.rank();
            let t = self.basis_traces();
            BaseMatrix::from_fn(self.base.clone(), n, n, |i, j| {
                self.table[i][j].iter().zip(t).fold(self.base.zero(), |acc, (c, tk)| acc + c * tk)
            })
        })
    }

    /// `det` of the trace form, before unit normalization.
    pub fn raw_discriminant(&self) -> Result<&Poly, AlgebraError> {
        if let Some(d) = self.raw_discriminant.get() {
            return Ok(d);
        }
        let d = self.gram_matrix().det()?;
        Ok(self.raw_discriminant.get_or_init(|| d))
    }

    /// The discriminant ideal's generator, normalized up to a unit of the base.
    pub fn discriminant(&self) -> Result<Poly, AlgebraError> {
        Ok(self.raw_discriminant()?.normalize_up_to_unit())
    }

    /// Generators of `I_i`: all `(n - i + 1)`-minors of the Gram matrix,
    /// normalized and deduplicated, zeros dropped (an all-zero ideal is `[0]`).
    pub fn determinantal_ideal(&self, i: usize, budget: u128) -> Result<Vec<Poly>, AlgebraError> {
        let n = self.rank();
        if i == 0 || i > n {
            return Err(AlgebraError::IndexOutOfRange { index: i, rank: n });
        }
        let k = n - i + 1;
        let subsets = binomial(n, k);
        let count = subsets.saturating_mul(subsets);
        if count > budget {
            return Err(AlgebraError::MinorBudget { minors: count, budget });
        }
        let gram = self.gram_matrix();
        let subsets = k_subsets(n, k);
        let mut gens: Vec<Poly> = Vec::new();
        for rows in &subsets {
            for cols in &subsets {
                let m = gram.submatrix(rows, cols).det()?.normalize_up_to_unit();
                if !m.is_zero() && !gens.contains(&m) {
                    gens.push(m);
                }
            }
        }
        if gens.is_empty() {
            gens.push(self.base.zero());
        }
        if gens.iter().any(Poly::is_unit) {
            return Ok(vec![self.base.one()]);
        }
        gens.sort_by_cached_key(|g| (g.num_terms(), g.to_string()));
        Ok(gens)
    }

    /// Checks associativity, the unit axioms and declared commutativity, and
    /// reports every violation found.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.rank();
        let mut violations = Vec::new();
        let unit = self.unit();
        if unit.coords.iter().all(Poly::is_zero) {
            violations.push(Violation::ZeroUnit);
        }
        for i in 0..n {
            let e = self.basis_element(i);
            if self.mul_unchecked(&unit, &e) != e {
                violations.push(Violation::LeftUnit(i));
            }
            if self.mul_unchecked(&e, &unit) != e {
                violations.push(Violation::RightUnit(i));
            }
        }
        let basis: Vec<AlgebraElement> = (0..n).map(|i| self.basis_element(i)).collect();
        for i in 0..n {
            for j in 0..n {
                let eij = AlgebraElement { coords: self.table[i][j].clone() };
                if self.commutative && j > i && self.table[i][j] != self.table[j][i] {
                    violations.push(Violation::Commutativity(i, j));
                }
                for (k, ek) in basis.iter().enumerate() {
                    let left = self.mul_unchecked(&eij, ek);
                    let ejk = AlgebraElement { coords: self.table[j][k].clone() };
                    let right = self.mul_unchecked(&basis[i], &ejk);
                    if left != right {
                        violations.push(Violation::Associativity(i, j, k));
                    }
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(AlgebraError::Invalid(violations))
        }
    }

    /// The same algebra on the basis `f_j = sum_k p[k][j] e_k`.
    pub fn with_basis_change(&self, p: &[Vec<BigRational>]) -> Result<FiniteAlgebra, AlgebraError> {
        let n = self.rank();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Shape("basis change must be square of the algebra's rank".into()));
        }
        let inv = invert_rational(p).ok_or(AlgebraError::Singular)?;
        let to_new = |v: &AlgebraElement| -> Vec<Poly> {
            (0..n)
                .map(|i| (0..n).fold(self.base.zero(), |acc, k| acc + v.coords[k].scale(&inv[i][k])))
                .collect()
        };
        let f: Vec<AlgebraElement> = (0..n)
            .map(|j| AlgebraElement { coords: (0..n).map(|k| self.base.constant(p[k][j].clone())).collect() })
            .collect();
        let unit = to_new(&self.unit());
        let names = (0..n).map(|i| format!("f{}", i + 1)).collect();
        FiniteAlgebra::from_fn(self.base.clone(), names, unit, self.commutative, |i, j| {
            to_new(&self.mul_unchecked(&f[i], &f[j]))
        })
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn invert_rational(p: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = p.len();
    let mut a: Vec<Vec<BigRational>> = p
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        let inv = a[c][c].recip();
        a[c].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot_row = a[c].clone();
                a[r].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x -= &f * y);
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
