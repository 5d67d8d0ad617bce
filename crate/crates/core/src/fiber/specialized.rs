use super::{Character, Dense, FiberError, Field};
use crate::algebra::FiniteAlgebra;

/// A finite algebra over a field, stored as dense structure constants.
#[derive(Clone, Debug)]
pub struct SpecializedAlgebra<F> {
    rank: usize,
    /// `table[(i * n + j) * n + k]` is the coefficient of `e_k` in `e_i e_j`.
    table: Vec<F>,
    unit: Vec<F>,
    gram: Dense<F>,
    tolerance: f64,
}

impl<F: Field> SpecializedAlgebra<F> {
    /// Builds the algebra and computes its Gram matrix from the constants.
    pub fn from_table(rank: usize, table: Vec<F>, unit: Vec<F>, tolerance: f64) -> Self {
        assert_eq!(table.len(), rank * rank * rank, "structure constants must be n^3");
        assert_eq!(unit.len(), rank, "unit must have length n");
        let traces: Vec<F> = (0..rank)
            .map(|i| (0..rank).fold(F::zero(), |acc, j| acc + table[(i * rank + j) * rank + j].clone()))
            .collect();
        let gram = Dense::from_fn(rank, rank, |i, j| {
            (0..rank).fold(F::zero(), |acc, k| acc + table[(i * rank + j) * rank + k].clone() * traces[k].clone())
        });
        SpecializedAlgebra { rank, table, unit, gram, tolerance }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn unit(&self) -> &[F] {
        &self.unit
    }

    pub fn gram(&self) -> &Dense<F> {
        &self.gram
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.table[(i * self.rank + j) * self.rank + k]
    }

    /// The structure constants as nested `[i][j][k]` vectors.
    pub fn table(&self) -> Vec<Vec<Vec<F>>> {
        let n = self.rank;
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.constant(i, j, k).clone()).collect()).collect()).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        let mut v = vec![F::zero(); self.rank];
        v[i] = F::one();
        v
    }

    pub fn mul(&self, u: &[F], v: &[F]) -> Vec<F> {
        let n = self.rank;
        let mut out = vec![F::zero(); n];
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let c = ui.clone() * vj.clone();
                for (k, slot) in out.iter_mut().enumerate() {
                    let s = self.constant(i, j, k);
                    if !s.is_zero() {
                        *slot = slot.clone() + c.clone() * s.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `x -> u x`; column `j` holds the coordinates of `u e_j`.
    pub fn left_mult(&self, u: &[F]) -> Dense<F> {
        let n = self.rank;
        let mut m = Dense::zeros(n, n);
        for j in 0..n {
            let col = self.mul(u, &self.basis_vector(j));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    pub fn trace(&self, u: &[F]) -> F {
        self.left_mult(u).trace()
    }

    pub fn pow(&self, u: &[F], k: usize) -> Vec<F> {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, u);
        }
        acc
    }
}

/// Evaluates structure constants, unit and Gram matrix of `alg` at `chi`, and
/// checks that the evaluated symbolic Gram matrix matches the one recomputed
/// from the evaluated constants.
pub fn specialize<F: Field>(alg: &FiniteAlgebra, chi: &Character) -> Result<SpecializedAlgebra<F>, FiberError> {
    let values = chi.values_for(alg.base())?;
    let n = alg.rank();
    let eval = |p: &crate::poly::Poly| -> Result<F, FiberError> { F::from_scalar(&p.eval_slice(&values)?) };
    let mut table = Vec::with_capacity(n * n * n);
    for row in alg.table() {
        for entry in row {
            for c in entry {
                table.push(eval(c)?);
            }
        }
    }
    let unit = alg.unit().coords.iter().map(eval).collect::<Result<Vec<_>, _>>()?;
    let spec = SpecializedAlgebra::from_table(n, table, unit, chi.working_tolerance());

    let symbolic = alg.gram_matrix();
    let traces: Vec<F> = (0..n).map(|k| (0..n).fold(F::zero(), |a, j| a + spec.constant(k, j, j).clone())).collect();
    let slack = 1e3 * chi.working_tolerance().max(1e-12);
    for i in 0..n {
        for j in 0..n {
            let sym = symbolic.get(i, j);
            let evaluated = eval(sym)?;
            let recomputed = &spec.gram[(i, j)];
            let agree = if F::EXACT {
                &evaluated == recomputed
            } else {
                let scale = sym.eval_magnitude(&values)?.max(
                    (0..n).map(|k| spec.constant(i, j, k).magnitude() * traces[k].magnitude()).sum::<f64>(),
                );
                (evaluated.clone() - recomputed.clone()).magnitude() <= slack * scale.max(f64::MIN_POSITIVE)
            };
            if !agree {
                return Err(FiberError::Inconsistent(format!(
                    "Gram entry ({i},{j}): specialized {:?} but recomputed {:?}",
                    evaluated.to_complex(),
                    recomputed.to_complex()
                )));
            }
        }
    }
    Ok(spec)
}
