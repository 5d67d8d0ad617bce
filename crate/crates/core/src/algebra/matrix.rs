use std::fmt;

use serde::{Serialize, Serializer};

use super::det::{det_bareiss, det_cofactor};
use super::AlgebraError;
use crate::poly::{Poly, PolyError, Ring};

/// A dense rectangular matrix of polynomials over one base ring.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl BaseMatrix {
    pub fn from_rows(ring: Ring, rows: Vec<Vec<Poly>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::Shape("matrix rows have different lengths".into()));
        }
        let entries: Vec<Poly> = rows.into_iter().flatten().collect();
        if let Some(p) = entries.iter().find(|p| p.ring() != &ring) {
            return Err(PolyError::RingMismatch { left: ring.to_string(), right: p.ring().to_string() }.into());
        }
        Ok(BaseMatrix { ring, rows: nrows, cols: ncols, entries })
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        BaseMatrix { ring, rows, cols, entries }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let (one, zero) = (ring.one(), ring.zero());
        Self::from_fn(ring, n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        self.entries.chunks(self.cols.max(1)).map(<[Poly]>::to_vec).collect()
    }

    pub fn transpose(&self) -> BaseMatrix {
        BaseMatrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Poly {
        (0..self.rows.min(self.cols)).fold(self.ring.zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn scale(&self, c: &Poly) -> BaseMatrix {
        BaseMatrix::from_fn(self.ring.clone(), self.rows, self.cols, |i, j| c * self.get(i, j))
    }

    pub fn matmul(&self, other: &BaseMatrix) -> Result<BaseMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(BaseMatrix::from_fn(self.ring.clone(), self.rows, other.cols, |i, j| {
            (0..self.cols).fold(self.ring.zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        }))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BaseMatrix {
        BaseMatrix::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Exact determinant by Bareiss elimination, with cofactor expansion as a
    /// fallback for n <= 6.
    pub fn det(&self) -> Result<Poly, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let rows = self.rows();
        match det_bareiss(&self.ring, &rows) {
            Ok(d) => Ok(d),
            Err(PolyError::NotDivisible) if self.rows <= 6 => Ok(det_cofactor(&self.ring, &rows)),
            Err(e) => Err(e.into()),
        }
    }

    /// Entries as grammar strings, row-major.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
    }
}

impl fmt::Display for BaseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_strings() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for BaseMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}
