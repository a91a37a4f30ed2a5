//! Fraction-free (Bareiss) determinant over any integral domain with exact
//! division. Used for rationals and for `Q[λ]` (the characteristic
//! polynomial).

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::Rational;

pub(crate) trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, where the division is known to be exact.
    fn exact_div(&self, rhs: &Self) -> Self;
}

impl ExactRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl ExactRing for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        debug_assert!(r.is_zero(), "Bareiss step left a remainder");
        q
    }
}

/// Determinant of the `n×n` row-major matrix `a`.
pub(crate) fn determinant<T: ExactRing>(n: usize, mut a: Vec<T>) -> T {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return T::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k * n + k]
                    .mul(&a[i * n + j])
                    .sub(&a[i * n + k].mul(&a[k * n + j]));
                a[i * n + j] = v.exact_div(&prev);
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
