//! Dense linear algebra over a [`Field`], exact or thresholded.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Dense<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Field> Dense<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Dense { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Dense { rows, cols, data }
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(F::magnitude).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_complex())
    }

    /// Reduced row echelon form. Float pivots below `rel_tol * max|entry|`
    /// are treated as zero; exact mode ignores `rel_tol`.
    pub fn rref(&self, rel_tol: f64) -> (Dense<F>, Vec<usize>) {
        let mut a = self.clone();
        let threshold = rel_tol * self.max_magnitude();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let pick = if F::EXACT {
                (r..a.rows).find(|&i| !a[(i, c)].is_zero())
            } else {
                (r..a.rows)
                    .max_by(|&i, &j| a[(i, c)].magnitude().total_cmp(&a[(j, c)].magnitude()))
                    .filter(|&i| !a[(i, c)].negligible(threshold))
            };
            let Some(p) = pick else {
                if !F::EXACT {
                    for i in r..a.rows {
                        a[(i, c)] = F::zero();
                    }
                }
                continue;
            };
            a.swap_rows(r, p);
            let inv = F::one() / a[(r, c)].clone();
            for j in c..a.cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..a.cols {
                        a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Pivot columns and a kernel basis: one vector per free column `f`, with
    /// a 1 in position `f` and support on `f` and the pivots.
    pub fn kernel(&self, rel_tol: f64) -> (Vec<usize>, Vec<Vec<F>>) {
        let (r, pivots) = self.rref(rel_tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect();
        (pivots, basis)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl<F> std::ops::Index<(usize, usize)> for Dense<F> {
    type Output = F;

    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Dense<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}
