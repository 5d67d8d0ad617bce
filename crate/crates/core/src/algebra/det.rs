//! Determinants: fraction-free Bareiss elimination over the coordinate ring and
//! a division-free cofactor expansion over any commutative ring.

use crate::poly::{Poly, PolyError, Ring};

/// Just enough of a commutative ring to expand determinants.
pub trait CommutativeRing {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

impl CommutativeRing for Ring {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Ring::zero(self)
    }

    fn one(&self) -> Poly {
        Ring::one(self)
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
}

/// Laplace expansion along the first row, skipping zero entries.
///
/// Exponential in the size; intended for n <= 6 and for rings without exact
/// division.
pub fn det_cofactor<R: CommutativeRing>(ring: &R, m: &[Vec<R::Elem>]) -> R::Elem {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    cofactor_rec(ring, m, 0, &cols)
}

fn cofactor_rec<R: CommutativeRing>(ring: &R, m: &[Vec<R::Elem>], row: usize, cols: &[usize]) -> R::Elem {
    match cols.len() {
        0 => return ring.one(),
        1 => return m[row][cols[0]].clone(),
        2 => {
            let a = ring.mul(&m[row][cols[0]], &m[row + 1][cols[1]]);
            let b = ring.mul(&m[row][cols[1]], &m[row + 1][cols[0]]);
            return ring.sub(&a, &b);
        }
        _ => {}
    }
    let mut acc = ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if ring.is_zero(entry) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = ring.mul(entry, &cofactor_rec(ring, m, row + 1, &rest));
        acc = if k % 2 == 0 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
    }
    acc
}

/// Bareiss elimination with row pivoting; every division is exact.
pub fn det_bareiss(ring: &Ring, m: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(ring.zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].checked_mul(&a[k][k])?.checked_sub(&a[i][k].checked_mul(&a[k][j])?)?;
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = ring.zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}
