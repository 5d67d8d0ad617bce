use std::cmp::Ordering;

use super::PolyError;

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exps: Vec<i64>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i128 {
        self.0.iter().map(|&e| e as i128).sum()
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<_, _>>()
            .map(Monomial)
    }

    pub fn checked_div(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<_, _>>()
            .map(Monomial)
    }

    pub fn checked_pow(&self, k: u32) -> Result<Monomial, PolyError> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k as i64).ok_or(PolyError::ExponentOverflow))
            .collect::<Result<_, _>>()
            .map(Monomial)
    }

    /// Componentwise `self >= other`.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = Monomial::new(vec![2, 0]);
        let b = Monomial::new(vec![1, 1]);
        let c = Monomial::new(vec![0, 3]);
        let d = Monomial::new(vec![-1, 0]);
        assert!(a > b);
        assert!(c > a);
        assert!(d < Monomial::one(2));
    }

    #[test]
    fn overflow_is_reported() {
        let a = Monomial::new(vec![i64::MAX]);
        let b = Monomial::new(vec![1]);
        assert!(matches!(a.checked_mul(&b), Err(PolyError::ExponentOverflow)));
    }
}
