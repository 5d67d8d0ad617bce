//! Standard presentations used throughout tests, fixtures and the Hecke module.

use super::{AlgebraError, FiniteAlgebra};
use crate::poly::{Poly, Ring};

fn unit_vector(base: &Ring, n: usize, i: usize) -> Vec<Poly> {
    (0..n).map(|k| if k == i { base.one() } else { base.zero() }).collect()
}

/// `A[y]/(y^n + c_{n-1} y^{n-1} + ... + c_0)` on the basis `1, y, ..., y^{n-1}`.
///
/// `lower` holds `c_0, ..., c_{n-1}`.
pub fn monogenic(base: &Ring, lower: &[Poly]) -> Result<FiniteAlgebra, AlgebraError> {
    let n = lower.len();
    if n == 0 {
        return Err(AlgebraError::Shape("monogenic algebra needs degree >= 1".into()));
    }
    // powers[k] = coordinates of y^k for k < 2n - 1
    let mut powers: Vec<Vec<Poly>> = (0..n).map(|k| unit_vector(base, n, k)).collect();
    while powers.len() < 2 * n - 1 {
        let prev = powers.last().unwrap();
        // y * (sum a_k y^k) = sum a_k y^{k+1}, with y^n = -sum c_k y^k
        let top = prev[n - 1].clone();
        let mut next = vec![base.zero(); n];
        next[1..].clone_from_slice(&prev[..n - 1]);
        for k in 0..n {
            next[k] = &next[k] - &(&top * &lower[k]);
        }
        powers.push(next);
    }
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "y".to_string(),
            _ => format!("y^{k}"),
        })
        .collect();
    FiniteAlgebra::from_fn(base.clone(), names, unit_vector(base, n, 0), true, |i, j| powers[i + j].clone())
}

/// `A[y]/(y^n - t)`.
pub fn pure_root(base: &Ring, n: usize, t: &Poly) -> Result<FiniteAlgebra, AlgebraError> {
    let mut lower = vec![base.zero(); n];
    if n > 0 {
        lower[0] = -t;
    }
    monogenic(base, &lower)
}

/// `M_n(A)` on the matrix units `e_ij`, row-major.
pub fn matrix_algebra(base: &Ring, n: usize) -> Result<FiniteAlgebra, AlgebraError> {
    let dim = n * n;
    let names = (0..dim).map(|k| format!("e{}{}", k / n + 1, k % n + 1)).collect();
    let mut unit = vec![base.zero(); dim];
    for i in 0..n {
        unit[i * n + i] = base.one();
    }
    FiniteAlgebra::from_fn(base.clone(), names, unit, n == 1, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if j == k {
            unit_vector(base, dim, i * n + l)
        } else {
            vec![base.zero(); dim]
        }
    })
}

/// `A^n` on its primitive idempotents.
pub fn diagonal(base: &Ring, n: usize) -> Result<FiniteAlgebra, AlgebraError> {
    let names = (0..n).map(|k| format!("p{}", k + 1)).collect();
    FiniteAlgebra::from_fn(base.clone(), names, vec![base.one(); n], true, |i, j| {
        if i == j {
            unit_vector(base, n, i)
        } else {
            vec![base.zero(); n]
        }
    })
}

/// Upper-triangular 2x2 matrices on `e11, e12, e22`.
pub fn upper_triangular(base: &Ring) -> Result<FiniteAlgebra, AlgebraError> {
    let names = ["e11", "e12", "e22"].map(String::from).to_vec();
    let unit = vec![base.one(), base.zero(), base.one()];
    FiniteAlgebra::from_fn(base.clone(), names, unit, false, |i, j| match (i, j) {
        (0, 0) => unit_vector(base, 3, 0),
        (0, 1) | (1, 2) => unit_vector(base, 3, 1),
        (2, 2) => unit_vector(base, 3, 2),
        _ => vec![base.zero(); 3],
    })
}

/// The quaternion algebra `(a, b)_A`: `i^2 = a`, `j^2 = b`, `ij = -ji = k`.
pub fn quaternion(base: &Ring, a: &Poly, b: &Poly) -> Result<FiniteAlgebra, AlgebraError> {
    let names = ["1", "i", "j", "k"].map(String::from).to_vec();
    let z = base.zero();
    let v = |c: [Poly; 4]| c.to_vec();
    let ab = a * b;
    FiniteAlgebra::from_fn(base.clone(), names, unit_vector(base, 4, 0), false, |x, y| {
        let e = |k| unit_vector(base, 4, k);
        match (x, y) {
            (0, k) | (k, 0) => e(k),
            (1, 1) => v([a.clone(), z.clone(), z.clone(), z.clone()]),
            (2, 2) => v([b.clone(), z.clone(), z.clone(), z.clone()]),
            (3, 3) => v([-&ab, z.clone(), z.clone(), z.clone()]),
            (1, 2) => e(3),
            (2, 1) => v([z.clone(), z.clone(), z.clone(), base.int(-1)]),
            (1, 3) => v([z.clone(), z.clone(), a.clone(), z.clone()]),
            (3, 1) => v([z.clone(), z.clone(), -a, z.clone()]),
            (2, 3) => v([z.clone(), -b, z.clone(), z.clone()]),
            (3, 2) => v([z.clone(), b.clone(), z.clone(), z.clone()]),
            _ => unreachable!(),
        }
    })
}

/// `R1 x R2` on the concatenated bases.
pub fn direct_product(r1: &FiniteAlgebra, r2: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    if r1.base() != r2.base() {
        return Err(AlgebraError::Shape("direct product needs a common base".into()));
    }
    let base = r1.base().clone();
    let (n1, n2) = (r1.rank(), r2.rank());
    let names = r1
        .basis_names()
        .iter()
        .map(|s| format!("{s}_1"))
        .chain(r2.basis_names().iter().map(|s| format!("{s}_2")))
        .collect();
    let unit = r1.unit().coords.into_iter().chain(r2.unit().coords).collect();
    FiniteAlgebra::from_fn(base.clone(), names, unit, r1.is_commutative() && r2.is_commutative(), |i, j| {
        let mut out = vec![base.zero(); n1 + n2];
        if i < n1 && j < n1 {
            out[..n1].clone_from_slice(r1.product(i, j));
        } else if i >= n1 && j >= n1 {
            out[n1..].clone_from_slice(r2.product(i - n1, j - n1));
        }
        out
    })
}
