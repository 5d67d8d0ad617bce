//! JSON algebra spec files.

use serde::{Deserialize, Serialize};

use super::{AlgebraError, FiniteAlgebra};
use crate::poly::{Poly, Ring, RingDescriptor};

/// On-disk presentation of a [`FiniteAlgebra`]; `mul[i][j]` holds the
/// coordinates of `b_i * b_j` as polynomial strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub base: RingDescriptor,
    pub rank: usize,
    pub basis: Vec<String>,
    pub unit: Vec<String>,
    pub mul: Vec<Vec<Vec<String>>>,
    pub commutative: bool,
}

impl AlgebraSpec {
    /// Parses every polynomial and checks shapes. Axioms are checked separately
    /// by [`FiniteAlgebra::validate`].
    pub fn build(&self) -> Result<FiniteAlgebra, AlgebraError> {
        let ring = Ring::try_from(self.base.clone()).map_err(|e| AlgebraError::field("base", e))?;
        self.build_over(&ring)
    }

    pub fn build_over(&self, ring: &Ring) -> Result<FiniteAlgebra, AlgebraError> {
        let n = self.rank;
        if n == 0 {
            return Err(AlgebraError::Field { field: "rank".into(), message: "must be positive".into() });
        }
        if self.basis.len() != n {
            return Err(AlgebraError::Field {
                field: "basis".into(),
                message: format!("expected {n} names, found {}", self.basis.len()),
            });
        }
        let unit = parse_vector(ring, &self.unit, n, "unit")?;
        if self.mul.len() != n {
            return Err(AlgebraError::Field { field: "mul".into(), message: format!("expected {n} rows") });
        }
        let mut table = Vec::with_capacity(n);
        for (i, row) in self.mul.iter().enumerate() {
            if row.len() != n {
                return Err(AlgebraError::Field { field: format!("mul[{i}]"), message: format!("expected {n} entries") });
            }
            let mut prow = Vec::with_capacity(n);
            for (j, v) in row.iter().enumerate() {
                prow.push(parse_vector(ring, v, n, &format!("mul[{i}][{j}]"))?);
            }
            table.push(prow);
        }
        FiniteAlgebra::new(ring.clone(), self.basis.clone(), unit, table, self.commutative)
    }

    pub fn from_algebra(alg: &FiniteAlgebra) -> Self {
        let strs = |v: &[Poly]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        AlgebraSpec {
            base: alg.base().descriptor().clone(),
            rank: alg.rank(),
            basis: alg.basis_names().to_vec(),
            unit: strs(&alg.unit().coords),
            mul: alg.table().iter().map(|row| row.iter().map(|v| strs(v)).collect()).collect(),
            commutative: alg.is_commutative(),
        }
    }
}

pub(crate) fn parse_vector(ring: &Ring, v: &[String], n: usize, field: &str) -> Result<Vec<Poly>, AlgebraError> {
    if v.len() != n {
        return Err(AlgebraError::Field {
            field: field.to_string(),
            message: format!("expected {n} coordinates, found {}", v.len()),
        });
    }
    v.iter()
        .enumerate()
        .map(|(k, s)| ring.parse(s).map_err(|e| AlgebraError::field(format!("{field}[{k}]"), e)))
        .collect()
}
