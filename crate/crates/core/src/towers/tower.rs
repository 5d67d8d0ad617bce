use rand::Rng;
use serde::{Deserialize, Serialize};

use super::TowerError;
use crate::algebra::{
    constructions, det_cofactor, parse_vector, AlgebraElement, AlgebraError, CommutativeRing, FiniteAlgebra,
};
use crate::poly::{Poly, Ring, RingDescriptor};
use crate::samples;

/// A commutative algebra viewed as a ring of coefficients.
pub struct Over<'a>(pub &'a FiniteAlgebra);

impl CommutativeRing for Over<'_> {
    type Elem = AlgebraElement;

    fn zero(&self) -> AlgebraElement {
        self.0.scalar(&self.0.base().zero())
    }

    fn one(&self) -> AlgebraElement {
        self.0.unit()
    }

    fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.0.add(a, b)
    }

    fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.0.mul_unchecked(a, b)
    }

    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.coords.iter().all(Poly::is_zero)
    }
}

/// `A -> B -> C` with `B` and `C` commutative. `C` is given over `B` and
/// also as an algebra over `A` on the product basis `b_i c_j`, stored at
/// index `j * rank(B) + i`.
#[derive(Clone, Debug)]
pub struct Tower {
    b: FiniteAlgebra,
    c_names: Vec<String>,
    c_unit: Vec<AlgebraElement>,
    /// `c_table[j][l][p]`: the `B`-coefficient of `c_p` in `c_j c_l`.
    c_table: Vec<Vec<Vec<AlgebraElement>>>,
    c_over_a: FiniteAlgebra,
}

impl Tower {
    pub fn new(
        b: FiniteAlgebra,
        c_names: Vec<String>,
        c_unit: Vec<AlgebraElement>,
        c_table: Vec<Vec<Vec<AlgebraElement>>>,
    ) -> Result<Self, TowerError> {
        if !b.is_commutative() {
            return Err(TowerError::NotCommutative("B".into()));
        }
        b.validate().map_err(|e| TowerError::Invalid(format!("B: {e}")))?;
        let m = c_names.len();
        let nb = b.rank();
        if m == 0 || c_unit.len() != m || c_table.len() != m || c_table.iter().any(|r| r.len() != m) {
            return Err(TowerError::Invalid(format!("C over B must have {m} unit coordinates and an {m}x{m} table")));
        }
        let bad_b = |e: &AlgebraElement| e.coords.len() != nb || e.coords.iter().any(|p| p.ring() != b.base());
        if c_unit.iter().any(bad_b) || c_table.iter().flatten().flatten().any(bad_b) {
            return Err(TowerError::Invalid(format!("C over B coefficients must be B-elements of length {nb}")));
        }
        for (j, row) in c_table.iter().enumerate() {
            if let Some(v) = row.iter().find(|v| v.len() != m) {
                return Err(TowerError::Invalid(format!("C over B: product row {j} has {} coordinates", v.len())));
            }
        }

        let n = nb * m;
        let mut table = vec![vec![vec![b.base().zero(); n]; n]; n];
        for j in 0..m {
            for i in 0..nb {
                for l in 0..m {
                    for k in 0..nb {
                        let bik = b.mul_unchecked(&b.basis_element(i), &b.basis_element(k));
                        for p in 0..m {
                            let coeff = b.mul_unchecked(&bik, &c_table[j][l][p]);
                            for (s, c) in coeff.coords.into_iter().enumerate() {
                                table[j * nb + i][l * nb + k][p * nb + s] = c;
                            }
                        }
                    }
                }
            }
        }
        let unit = c_unit.iter().flat_map(|e| e.coords.iter().cloned()).collect();
        let names = (0..n).map(|idx| format!("{}*{}", b.basis_names()[idx % nb], c_names[idx / nb])).collect();
        let c_over_a = FiniteAlgebra::new(b.base().clone(), names, unit, table, true)?;
        c_over_a.validate().map_err(|e| TowerError::Invalid(format!("C: {e}")))?;
        let tower = Tower { b, c_names, c_unit, c_table, c_over_a };
        tower.check_composition()?;
        Ok(tower)
    }

    /// `C = B[y]/(y^n + c_{n-1} y^{n-1} + ... + c_0)` with `c_k` in `B`.
    pub fn monogenic(b: FiniteAlgebra, lower: &[AlgebraElement]) -> Result<Self, TowerError> {
        let m = lower.len();
        let over = Over(&b);
        let zero = over.zero();
        let mut table = vec![vec![vec![zero.clone(); m]; m]; m];
        // Coefficients of y^k reduced modulo the relation, for k < 2m - 1.
        let mut powers: Vec<Vec<AlgebraElement>> = (0..m)
            .map(|k| (0..m).map(|p| if p == k { over.one() } else { zero.clone() }).collect())
            .collect();
        for k in m..2 * m - 1 {
            let prev = &powers[k - 1];
            let top = prev[m - 1].clone();
            let mut next = vec![zero.clone(); m];
            for p in (1..m).rev() {
                next[p] = prev[p - 1].clone();
            }
            for (p, c) in lower.iter().enumerate() {
                next[p] = over.sub(&next[p], &over.mul(&top, c));
            }
            powers.push(next);
        }
        for (j, row) in table.iter_mut().enumerate() {
            row.clone_from_slice(&powers[j..j + m]);
        }
        let mut unit = vec![zero; m];
        unit[0] = over.one();
        let names = (0..m).map(|k| format!("y^{k}")).collect();
        Tower::new(b, names, unit, table)
    }

    fn check_composition(&self) -> Result<(), TowerError> {
        for u in 0..self.c_over_a.rank() {
            for v in 0..self.c_over_a.rank() {
                let direct = self.c_over_a.mul_unchecked(&self.c_over_a.basis_element(u), &self.c_over_a.basis_element(v));
                let composed = self.mul_over_b(&self.to_b_coords(&self.c_over_a.basis_element(u)), &self.to_b_coords(
                    &self.c_over_a.basis_element(v),
                ));
                if self.from_b_coords(&composed) != direct {
                    return Err(TowerError::Invalid(format!("product of basis elements {u} and {v} disagrees")));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Ring {
        self.b.base()
    }

    pub fn b(&self) -> &FiniteAlgebra {
        &self.b
    }

    pub fn c_over_a(&self) -> &FiniteAlgebra {
        &self.c_over_a
    }

    /// `[C : B]`.
    pub fn degree(&self) -> usize {
        self.c_names.len()
    }

    pub fn c_unit_over_b(&self) -> &[AlgebraElement] {
        &self.c_unit
    }

    /// Coordinates of an element of `C` over the `B`-basis `c_j`.
    pub fn to_b_coords(&self, u: &AlgebraElement) -> Vec<AlgebraElement> {
        let nb = self.b.rank();
        u.coords.chunks(nb).map(|c| AlgebraElement { coords: c.to_vec() }).collect()
    }

    pub fn from_b_coords(&self, v: &[AlgebraElement]) -> AlgebraElement {
        AlgebraElement { coords: v.iter().flat_map(|e| e.coords.iter().cloned()).collect() }
    }

    /// `b * 1_C` for `b` in `B`.
    pub fn embed_b(&self, x: &AlgebraElement) -> AlgebraElement {
        let over = Over(&self.b);
        self.from_b_coords(&self.c_unit.iter().map(|u| over.mul(x, u)).collect::<Vec<_>>())
    }

    fn mul_over_b(&self, u: &[AlgebraElement], v: &[AlgebraElement]) -> Vec<AlgebraElement> {
        let over = Over(&self.b);
        let m = self.degree();
        let mut out = vec![over.zero(); m];
        for j in 0..m {
            for l in 0..m {
                let c = over.mul(&u[j], &v[l]);
                if over.is_zero(&c) {
                    continue;
                }
                for (p, slot) in out.iter_mut().enumerate() {
                    *slot = over.add(slot, &over.mul(&c, &self.c_table[j][l][p]));
                }
            }
        }
        out
    }

    fn basis_c(&self, j: usize) -> Vec<AlgebraElement> {
        let over = Over(&self.b);
        (0..self.degree()).map(|p| if p == j { over.one() } else { over.zero() }).collect()
    }

    /// `N_{C/B}(u)`, the determinant over `B` of multiplication by `u`.
    pub fn norm_c_over_b(&self, u: &AlgebraElement) -> AlgebraElement {
        let uc = self.to_b_coords(u);
        let cols: Vec<Vec<AlgebraElement>> = (0..self.degree()).map(|l| self.mul_over_b(&uc, &self.basis_c(l))).collect();
        let m: Vec<Vec<AlgebraElement>> = (0..self.degree()).map(|p| cols.iter().map(|c| c[p].clone()).collect()).collect();
        det_cofactor(&Over(&self.b), &m)
    }

    /// `d_{C/B}`: determinant over `B` of the Gram matrix with entries in `B`.
    pub fn discriminant_c_over_b(&self) -> AlgebraElement {
        let over = Over(&self.b);
        let m = self.degree();
        let traces: Vec<AlgebraElement> =
            (0..m).map(|k| (0..m).fold(over.zero(), |acc, j| over.add(&acc, &self.c_table[k][j][j]))).collect();
        let gram: Vec<Vec<AlgebraElement>> = (0..m)
            .map(|j| {
                (0..m)
                    .map(|l| (0..m).fold(over.zero(), |acc, p| over.add(&acc, &over.mul(&self.c_table[j][l][p], &traces[p]))))
                    .collect()
            })
            .collect();
        det_cofactor(&over, &gram)
    }

    pub fn to_spec(&self) -> TowerSpec {
        let strs = |e: &AlgebraElement| e.coords.iter().map(ToString::to_string).collect::<Vec<_>>();
        let b = crate::algebra::AlgebraSpec::from_algebra(&self.b);
        TowerSpec {
            a: self.base().descriptor().clone(),
            b: BSpec { base: None, rank: b.rank, basis: b.basis, unit: b.unit, mul: b.mul, commutative: true },
            c_over_b: CoverSpec {
                rank: self.degree(),
                basis: self.c_names.clone(),
                unit: self.c_unit.iter().map(strs).collect(),
                mul: self.c_table.iter().map(|row| row.iter().map(|v| v.iter().map(strs).collect()).collect()).collect(),
                commutative: true,
            },
        }
    }
}

/// Tower file: `{"A": ring, "B": algebra over A, "C_over_B": algebra with B-coefficients}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpec {
    #[serde(rename = "A")]
    pub a: RingDescriptor,
    #[serde(rename = "B")]
    pub b: BSpec,
    #[serde(rename = "C_over_B")]
    pub c_over_b: CoverSpec,
}

/// An algebra spec whose `base` may be omitted (defaults to `A`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<RingDescriptor>,
    pub rank: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub mul: Vec<Vec<Vec<String>>>,
    pub commutative: bool,
}

/// `unit[j]` and `mul[j][l][p]` are `B`-coordinate vectors of strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverSpec {
    pub rank: usize,
    pub basis: Vec<String>,
    pub unit: Vec<Vec<String>>,
    pub mul: Vec<Vec<Vec<Vec<String>>>>,
    pub commutative: bool,
}

impl TowerSpec {
    pub fn build(&self) -> Result<Tower, TowerError> {
        let ring = Ring::try_from(self.a.clone()).map_err(|e| AlgebraError::field("A", e))?;
        if let Some(base) = &self.b.base {
            if base != &self.a {
                return Err(AlgebraError::Field { field: "B.base".into(), message: "must equal A".into() }.into());
            }
        }
        let b_spec = crate::algebra::AlgebraSpec {
            base: self.a.clone(),
            rank: self.b.rank,
            basis: self.b.basis.clone(),
            unit: self.b.unit.clone(),
            mul: self.b.mul.clone(),
            commutative: self.b.commutative,
        };
        let b = b_spec.build_over(&ring).map_err(|e| prefix("B", e))?;
        let c = &self.c_over_b;
        if !c.commutative {
            return Err(TowerError::NotCommutative("C_over_B".into()));
        }
        let m = c.rank;
        let nb = b.rank();
        let field_err = |field: String, message: String| TowerError::Algebra(AlgebraError::Field { field, message });
        if m == 0 {
            return Err(field_err("C_over_B.rank".into(), "must be positive".into()));
        }
        if c.basis.len() != m {
            return Err(field_err("C_over_B.basis".into(), format!("expected {m} names, found {}", c.basis.len())));
        }
        if c.unit.len() != m {
            return Err(field_err("C_over_B.unit".into(), format!("expected {m} B-vectors, found {}", c.unit.len())));
        }
        let elem = |v: &[String], field: String| -> Result<AlgebraElement, TowerError> {
            Ok(AlgebraElement { coords: parse_vector(&ring, v, nb, &field)? })
        };
        let unit = c
            .unit
            .iter()
            .enumerate()
            .map(|(j, v)| elem(v, format!("C_over_B.unit[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if c.mul.len() != m {
            return Err(field_err("C_over_B.mul".into(), format!("expected {m} rows")));
        }
        let mut table = Vec::with_capacity(m);
        for (j, row) in c.mul.iter().enumerate() {
            if row.len() != m {
                return Err(field_err(format!("C_over_B.mul[{j}]"), format!("expected {m} entries")));
            }
            let mut trow = Vec::with_capacity(m);
            for (l, v) in row.iter().enumerate() {
                if v.len() != m {
                    return Err(field_err(format!("C_over_B.mul[{j}][{l}]"), format!("expected {m} B-vectors")));
                }
                trow.push(
                    v.iter()
                        .enumerate()
                        .map(|(p, x)| elem(x, format!("C_over_B.mul[{j}][{l}][{p}]")))
                        .collect::<Result<Vec<_>, _>>()?,
                );
            }
            table.push(trow);
        }
        Tower::new(b, c.basis.clone(), unit, table)
    }
}

fn prefix(name: &str, e: AlgebraError) -> TowerError {
    match e {
        AlgebraError::Field { field, message } => {
            TowerError::Algebra(AlgebraError::Field { field: format!("{name}.{field}"), message })
        }
        other => other.into(),
    }
}

/// Both sides of the tower identity: `d_{C/A}` from the Gram matrix over `A`,
/// and `d_{B/A}^n N_{B/A}(d_{C/B})`.
pub fn discriminant_sides(t: &Tower) -> Result<(Poly, Poly), TowerError> {
    let direct = t.c_over_a.raw_discriminant()?.clone();
    let dba = t.b.raw_discriminant()?;
    let dcb = t.discriminant_c_over_b();
    let composed = dba.pow(t.degree() as u32)? * t.b.norm(&dcb)?;
    Ok((direct, composed))
}

pub fn check_discriminant_tower(t: &Tower) -> Result<bool, TowerError> {
    let (direct, composed) = discriminant_sides(t)?;
    Ok(direct.equal_up_to_unit(&composed)?)
}

/// `N_{C/A}(u) = N_{B/A}(N_{C/B}(u))`, and `N_{C/A}(b) = N_{B/A}(b)^n` for
/// `b = N_{C/B}(u)`.
pub fn check_norm_transitivity(t: &Tower, u: &AlgebraElement) -> Result<bool, TowerError> {
    let nca = t.c_over_a.norm(u)?;
    let ncb = t.norm_c_over_b(u);
    let composed = t.b.norm(&ncb)?;
    let b_in_c = t.embed_b(&ncb);
    let scalar_case = t.c_over_a.norm(&b_in_c)? == composed.pow(t.degree() as u32)?;
    Ok(nca == composed && scalar_case)
}

/// `det(tr(p r_i r_j)) = N(p) det(tr(r_i r_j))` in a commutative algebra.
pub fn check_nctrans(alg: &FiniteAlgebra, p: &AlgebraElement) -> Result<bool, TowerError> {
    if !alg.is_commutative() {
        return Err(TowerError::NotCommutative("algebra".into()));
    }
    let n = alg.rank();
    let mut twisted = vec![vec![alg.base().zero(); n]; n];
    for (i, row) in twisted.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let rr = alg.mul(&alg.basis_element(i), &alg.basis_element(j))?;
            *slot = alg.trace(&alg.mul(p, &rr)?)?;
        }
    }
    let lhs = crate::algebra::BaseMatrix::from_rows(alg.base().clone(), twisted)?.det()?;
    let rhs = alg.norm(p)? * alg.raw_discriminant()?.clone();
    Ok(lhs == rhs)
}

/// `A = Q[t]` or `Q[t^{+-1}]`, `B = A[x]/(x^2 - f)`, `C = B[y]/(y^2 - g)` with
/// `f` of degree at most 3 and `g` in `B`; draws with a vanishing discriminant
/// on either level are rejected.
pub fn random_quadratic_tower<R: Rng>(rng: &mut R) -> Tower {
    let a = if rng.gen_bool(0.5) { Ring::polynomial(&["t"]) } else { Ring::laurent(&["t"]) };
    loop {
        let f = samples::random_nonzero_poly(rng, &a, 3, 3);
        let b = constructions::monogenic(&a, &[-f, a.zero()]).expect("rank-2 monogenic");
        if b.raw_discriminant().map_or(true, Poly::is_zero) {
            continue;
        }
        let g = AlgebraElement { coords: (0..2).map(|_| samples::random_poly(rng, &a, 2, 2)).collect() };
        if b.norm(&g).map_or(true, |n| n.is_zero()) {
            continue;
        }
        let over = Over(&b);
        let tower = Tower::monogenic(b.clone(), &[over.sub(&over.zero(), &g), over.zero()]).expect("valid tower");
        if t_is_degenerate(&tower) {
            continue;
        }
        return tower;
    }
}

fn t_is_degenerate(t: &Tower) -> bool {
    t.c_over_a.raw_discriminant().map_or(true, Poly::is_zero)
}
