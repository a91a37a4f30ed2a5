use alloc::vec::Vec;

use super::bareiss;
use super::mat::Mat;
use super::poly::Poly;
use crate::Result;

/// `Δ(λ) = det(λI − m)`, monic of degree `n`. The coefficient of
/// `λ^{n−k}` is `d_k`.
///
/// Computed as a fraction-free determinant over `Q[λ]`, independently of the
/// adjugate recurrence in [`adjugate_char_coeffs`].
pub fn char_poly(m: &Mat) -> Result<Poly> {
    let n = m.square_dim()?;
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let c = Poly::constant(-m[(i, j)].clone());
            entries.push(if i == j { &c + &Poly::x() } else { c });
        }
    }
    Ok(bareiss::determinant(n, entries))
}

/// Matrix coefficients of `adj(λI − B) = Σ_k λ^{n−1−k} B_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjugateCoeffs {
    n: usize,
    coeffs: Vec<Mat>,
}

impl AdjugateCoeffs {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `B_0 … B_{n−1}`; `B_k` multiplies `λ^{n−1−k}`.
    pub fn coeffs(&self) -> &[Mat] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Mat {
        &self.coeffs[k]
    }

    /// Entry `(i, j)` of the assembled matrix polynomial, as a polynomial in λ.
    pub fn entry_poly(&self, i: usize, j: usize) -> Poly {
        let n = self.n;
        Poly::from_coeffs(
            (0..n)
                .map(|p| self.coeffs[n - 1 - p][(i, j)].clone())
                .collect(),
        )
    }
}

/// Coefficients of the adjugate of the characteristic matrix via the
/// recurrence `B_0 = I`, `B_k = B_{k−1}·B + d_k·I`.
pub fn adjugate_char_coeffs(m: &Mat) -> Result<AdjugateCoeffs> {
    let n = m.square_dim()?;
    let delta = char_poly(m)?;
    let mut coeffs = Vec::with_capacity(n);
    coeffs.push(Mat::identity(n));
    for k in 1..n {
        let d_k = delta.coeff(n - k);
        let next = &(&coeffs[k - 1] * m) + &Mat::scalar(n, &d_k);
        coeffs.push(next);
    }
    Ok(AdjugateCoeffs { n, coeffs })
}
