//! Seeded random generators for property checks: polynomials, algebras,
//! elements and basis changes.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{constructions, AlgebraElement, FiniteAlgebra};
use crate::poly::{Monomial, Poly, Ring};

pub fn random_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> BigRational {
    BigRational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

pub fn random_nonzero_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> BigRational {
    loop {
        let r = random_rational(rng, num, den);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Up to `max_terms` terms with exponents in `[-max_exp, max_exp]` (nonnegative
/// in polynomial rings) and small rational coefficients.
pub fn random_poly<R: Rng>(rng: &mut R, ring: &Ring, max_terms: usize, max_exp: i64) -> Poly {
    let lo = if ring.is_laurent() { -max_exp } else { 0 };
    let nterms = rng.gen_range(0..=max_terms);
    let terms: Vec<_> = (0..nterms)
        .map(|_| {
            let exps = (0..ring.nvars()).map(|_| rng.gen_range(lo..=max_exp)).collect();
            (Monomial::new(exps), random_rational(rng, 5, 3))
        })
        .collect();
    Poly::from_terms(ring.clone(), terms).expect("exponents within ring constraints")
}

pub fn random_nonzero_poly<R: Rng>(rng: &mut R, ring: &Ring, max_terms: usize, max_exp: i64) -> Poly {
    loop {
        let p = random_poly(rng, ring, max_terms.max(1), max_exp);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_element<R: Rng>(rng: &mut R, alg: &FiniteAlgebra) -> AlgebraElement {
    let coords = (0..alg.rank()).map(|_| random_poly(rng, alg.base(), 2, 1)).collect();
    AlgebraElement { coords }
}

/// A commutative algebra of rank <= `max_rank`: monogenic, split, or a product.
pub fn random_commutative_algebra<R: Rng>(rng: &mut R, base: &Ring, max_rank: usize) -> FiniteAlgebra {
    let max_rank = max_rank.max(1);
    match rng.gen_range(0..4) {
        0 | 1 => {
            let n = rng.gen_range(1..=max_rank);
            let lower: Vec<Poly> = (0..n).map(|_| random_poly(rng, base, 2, 1)).collect();
            constructions::monogenic(base, &lower).unwrap()
        }
        2 => constructions::diagonal(base, rng.gen_range(1..=max_rank)).unwrap(),
        _ => {
            if max_rank < 2 {
                return constructions::diagonal(base, 1).unwrap();
            }
            let n1 = rng.gen_range(1..max_rank);
            let n2 = rng.gen_range(1..=max_rank - n1);
            let a = random_commutative_algebra(rng, base, n1);
            let b = random_commutative_algebra(rng, base, n2);
            constructions::direct_product(&a, &b).unwrap()
        }
    }
}

/// Any algebra of rank <= 5, commutative or not.
pub fn random_algebra<R: Rng>(rng: &mut R, base: &Ring) -> FiniteAlgebra {
    match rng.gen_range(0..6) {
        0 => random_commutative_algebra(rng, base, 5),
        1 => constructions::matrix_algebra(base, 2).unwrap(),
        2 => constructions::upper_triangular(base).unwrap(),
        3 => {
            let a = random_nonzero_poly(rng, base, 2, 1);
            let b = random_nonzero_poly(rng, base, 2, 1);
            constructions::quaternion(base, &a, &b).unwrap()
        }
        4 => {
            let ut = constructions::upper_triangular(base).unwrap();
            let k = random_commutative_algebra(rng, base, 2);
            constructions::direct_product(&ut, &k).unwrap()
        }
        _ => {
            let m = constructions::matrix_algebra(base, 2).unwrap();
            constructions::direct_product(&m, &constructions::diagonal(base, 1).unwrap()).unwrap()
        }
    }
}

/// A random integer matrix with determinant +-1 (product of elementary moves).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    if n < 2 {
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = BigRational::from_integer(rng.gen_range(-2i64..=2).into());
        for row in m.iter_mut() {
            let v = &row[j] * &c;
            row[i] += v;
        }
    }
    m
}
