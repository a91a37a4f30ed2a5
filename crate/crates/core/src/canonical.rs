//! Closed-form canonical decompositions for the rank-one family.
//!
//! For coefficients `b = (b_1, …, b_n)` the family has two members: `B̂`,
//! whose `i`-th row is constant `b_i`, and `B̌ = B̂ᵀ`, whose `j`-th column is
//! constant `b_j`. Both have characteristic polynomial `λ^{n−1}(λ − s)` and
//! minimal polynomial `λ(λ − s)`, `s = Σ b_i`.
//!
//! When `s ≠ 0` the matrix is diagonalizable with `J = diag(0, …, 0, s)`;
//! when `s = 0` it is nilpotent of index two and the Jordan and rational
//! forms coincide (a single 2×2 block at eigenvalue zero).

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{char_poly, rat, Mat, Poly, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Row `i` is constant `b_i`.
    Hat,
    /// Column `j` is constant `b_j`.
    Check,
}

/// Coefficients of a rank-one system matrix. `n >= 2`, `b ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankOneSpec {
    b: Vec<Rational>,
    orientation: Orientation,
}

impl RankOneSpec {
    pub fn new(b: Vec<Rational>, orientation: Orientation) -> Result<Self> {
        if b.len() < 2 {
            return Err(Error::TooSmall(b.len()));
        }
        if b.iter().all(Zero::is_zero) {
            return Err(Error::ZeroCoefficients);
        }
        Ok(RankOneSpec { b, orientation })
    }

    pub fn from_ints(b: &[i64], orientation: Orientation) -> Result<Self> {
        Self::new(b.iter().map(|&v| rat(v)).collect(), orientation)
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `Σ b_i`, the only possibly nonzero eigenvalue.
    pub fn sum(&self) -> Rational {
        self.b.iter().sum()
    }

    /// True when `Σ b_i = 0`.
    pub fn is_degenerate(&self) -> bool {
        self.sum().is_zero()
    }

    /// Index of the first nonzero coefficient.
    fn pivot(&self) -> usize {
        self.b
            .iter()
            .position(|v| !v.is_zero())
            .expect("b is nonzero")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormKind {
    Jordan,
    Rational,
}

/// `transition_inverse · B · transition = canonical`, exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    canonical: Mat,
    transition: Mat,
    transition_inverse: Mat,
    kind: FormKind,
    degenerate: bool,
    pivot: Option<usize>,
}

impl Decomposition {
    /// Wraps a caller-supplied transition for an arbitrary system matrix,
    /// checking `T^{-1} B T = canonical`.
    pub fn from_transition(
        system: &Mat,
        canonical: Mat,
        transition: Mat,
        kind: FormKind,
    ) -> Result<Self> {
        let n = system.square_dim()?;
        if canonical.rows() != n || canonical.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: canonical.rows(),
            });
        }
        if transition.rows() != n || transition.cols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: transition.rows(),
            });
        }
        let transition_inverse = transition.inverse()?;
        let d = Decomposition {
            canonical,
            transition,
            transition_inverse,
            kind,
            degenerate: false,
            pivot: None,
        };
        if !d.is_valid_for(system) {
            return Err(Error::InconsistentTransition);
        }
        Ok(d)
    }

    pub fn canonical(&self) -> &Mat {
        &self.canonical
    }

    pub fn transition(&self) -> &Mat {
        &self.transition
    }

    pub fn transition_inverse(&self) -> &Mat {
        &self.transition_inverse
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    /// True iff `Σ b_i = 0` for a rank-one decomposition.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// For `B̌`, the index `p` of the coefficient the transition divides by
    /// (the first nonzero `b_p`). `None` for `B̂` and caller-supplied forms.
    pub fn pivot(&self) -> Option<usize> {
        self.pivot
    }

    /// Checks both invariants: `T·T^{-1} = I` and `T^{-1}·B·T = canonical`.
    pub fn is_valid_for(&self, system: &Mat) -> bool {
        let n = self.transition.rows();
        system.rows() == n
            && system.cols() == n
            && &self.transition * &self.transition_inverse == Mat::identity(n)
            && &(&self.transition_inverse * system) * &self.transition == self.canonical
    }
}

/// `B̂` or `B̌`.
pub fn build_matrix(spec: &RankOneSpec) -> Mat {
    let n = spec.n();
    let b = spec.b();
    match spec.orientation {
        Orientation::Hat => Mat::from_fn(n, n, |i, _| b[i].clone()),
        Orientation::Check => Mat::from_fn(n, n, |_, j| b[j].clone()),
    }
}

/// `λ^{n−1}(λ − Σ b_i)`
pub fn rank_one_char_poly(spec: &RankOneSpec) -> Poly {
    let n = spec.n();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    coeffs[n - 1] = -spec.sum();
    Poly::from_coeffs(coeffs)
}

/// `λ(λ − Σ b_i)`; `λ²` in the degenerate case.
pub fn rank_one_min_poly(spec: &RankOneSpec) -> Poly {
    &Poly::x() * &Poly::linear_root(spec.sum())
}

/// Invariant factors of degree at least one, in divisibility order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub factors: Vec<Poly>,
    pub degenerate: bool,
}

/// `[λ, …, λ, λ² − sλ]` (`n−2` copies of `λ`). With `s = 0` the last factor
/// is `λ²`, matching the single nilpotent block of the degenerate form.
pub fn invariant_factors(spec: &RankOneSpec) -> InvariantFactors {
    let mut factors = vec![Poly::x(); spec.n() - 2];
    factors.push(rank_one_min_poly(spec));
    InvariantFactors {
        factors,
        degenerate: spec.is_degenerate(),
    }
}

/// `[λ, …, λ, λ − s]` (`n−1` copies of `λ`) when `s ≠ 0`; `[λ, …, λ, λ²]`
/// (`n−2` copies) when `s = 0`.
pub fn elementary_divisors(spec: &RankOneSpec) -> Vec<Poly> {
    let n = spec.n();
    if spec.is_degenerate() {
        let mut out = vec![Poly::x(); n - 2];
        out.push(Poly::from_ints(&[0, 0, 1]));
        out
    } else {
        let mut out = vec![Poly::x(); n - 1];
        out.push(Poly::linear_root(spec.sum()));
        out
    }
}

fn unit(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

/// Basis of the kernel `{x : Σ x_i = 0}` (for `B̂`) or `{x : b·x = 0}`
/// (for `B̌`), in the order the transitions use.
fn kernel_candidates(spec: &RankOneSpec) -> Vec<Vec<Rational>> {
    let n = spec.n();
    match spec.orientation {
        // v_j = e_{j+1} − e_1
        Orientation::Hat => (1..n)
            .map(|j| {
                let mut v = unit(n, j);
                v[0] = rat(-1);
                v
            })
            .collect(),
        // e_j − (b_j / b_p) e_p for j ≠ p
        Orientation::Check => {
            let p = spec.pivot();
            let bp = &spec.b[p];
            (0..n)
                .filter(|&j| j != p)
                .map(|j| {
                    let mut v = unit(n, j);
                    v[p] = -(&spec.b[j] / bp);
                    v
                })
                .collect()
        }
    }
}

/// Eigenvector for `s = Σ b_i`.
fn top_eigenvector(spec: &RankOneSpec) -> Vec<Rational> {
    match spec.orientation {
        Orientation::Hat => spec.b.clone(),
        Orientation::Check => vec![Rational::one(); spec.n()],
    }
}

/// Closed-form inverse of the doubly companion modal matrix of `B̂`:
/// `−1/s` times the matrix whose row `j < n` is constant `b_{j+1}` except
/// `b_{j+1} − s` in column `j+1`, and whose last row is all `−1`.
fn hat_modal_inverse(b: &[Rational], s: &Rational) -> Mat {
    let n = b.len();
    let factor = -s.recip();
    Mat::from_fn(n, n, |i, j| {
        let raw = if i + 1 == n {
            rat(-1)
        } else if j == i + 1 {
            &b[i + 1] - s
        } else {
            b[i + 1].clone()
        };
        raw * &factor
    })
}

fn diag_jordan(n: usize, s: &Rational) -> Mat {
    let mut j = Mat::zeros(n, n);
    j[(n - 1, n - 1)] = s.clone();
    j
}

fn nilpotent_block(n: usize) -> Mat {
    let mut j = Mat::zeros(n, n);
    j[(n - 2, n - 1)] = Rational::one();
    j
}

/// `I` with `−1/s` at `(n−1, n)`: takes `J` to the companion form.
fn corrector(n: usize, s: &Rational) -> Mat {
    let mut r = Mat::identity(n);
    r[(n - 2, n - 1)] = -s.recip();
    r
}

/// Jordan decomposition of `B̂` or `B̌`.
///
/// With `s ≠ 0` the transition is the modal matrix: kernel vectors, then the
/// eigenvector for `s`. With `s = 0` it is `n−2` kernel vectors completing
/// the chain vector `B u` to a kernel basis, then `B u`, then the
/// generalized eigenvector `u`.
pub fn jordan_decomposition(spec: &RankOneSpec) -> Result<Decomposition> {
    let n = spec.n();
    let s = spec.sum();
    let pivot = match spec.orientation {
        Orientation::Hat => None,
        Orientation::Check => Some(spec.pivot()),
    };
    if s.is_zero() {
        return degenerate_decomposition(spec, FormKind::Jordan);
    }

    let mut columns = kernel_candidates(spec);
    columns.push(top_eigenvector(spec));
    let transition = Mat::from_columns(&columns)?;
    let transition_inverse = match spec.orientation {
        Orientation::Hat => hat_modal_inverse(&spec.b, &s),
        Orientation::Check => transition.inverse()?,
    };
    Ok(Decomposition {
        canonical: diag_jordan(n, &s),
        transition,
        transition_inverse,
        kind: FormKind::Jordan,
        degenerate: false,
        pivot,
    })
}

fn degenerate_decomposition(spec: &RankOneSpec, kind: FormKind) -> Result<Decomposition> {
    let n = spec.n();
    let b_mat = build_matrix(spec);
    let u = match spec.orientation {
        Orientation::Hat => unit(n, 0),
        Orientation::Check => unit(n, spec.pivot()),
    };
    let chain = b_mat.mul_vec(&u)?;

    // Leftmost kernel vectors that keep the chain vector independent.
    let mut chosen: Vec<Vec<Rational>> = Vec::with_capacity(n - 2);
    for cand in kernel_candidates(spec) {
        if chosen.len() == n - 2 {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(chain.clone());
        trial.push(cand.clone());
        if Mat::from_columns(&trial)?.rank() == trial.len() {
            chosen.push(cand);
        }
    }
    debug_assert_eq!(chosen.len(), n - 2);
    chosen.push(chain);
    chosen.push(u);
    let transition = Mat::from_columns(&chosen)?;
    let transition_inverse = transition.inverse()?;
    Ok(Decomposition {
        canonical: nilpotent_block(n),
        transition,
        transition_inverse,
        kind,
        degenerate: true,
        pivot: match spec.orientation {
            Orientation::Hat => None,
            Orientation::Check => Some(spec.pivot()),
        },
    })
}

/// Rational canonical decomposition. With `s ≠ 0` the canonical form is
/// zero except `C[n−1, n] = 1` and `C[n, n] = s`, and the transition is the
/// modal matrix times the corrector `R`. With `s = 0` it coincides with the
/// Jordan decomposition.
pub fn rational_decomposition(spec: &RankOneSpec) -> Result<Decomposition> {
    let n = spec.n();
    let s = spec.sum();
    if s.is_zero() {
        return degenerate_decomposition(spec, FormKind::Rational);
    }
    let jordan = jordan_decomposition(spec)?;
    let r = corrector(n, &s);
    let mut r_inv = Mat::identity(n);
    r_inv[(n - 2, n - 1)] = s.recip();

    let mut canonical = Mat::zeros(n, n);
    canonical[(n - 2, n - 1)] = Rational::one();
    canonical[(n - 1, n - 1)] = s;

    Ok(Decomposition {
        canonical,
        transition: &jordan.transition * &r,
        transition_inverse: &r_inv * &jordan.transition_inverse,
        kind: FormKind::Rational,
        degenerate: false,
        pivot: jordan.pivot,
    })
}

/// Companion matrix of a monic polynomial: ones on the superdiagonal, last
/// row `−d_n, …, −d_1`.
pub fn companion_matrix(p: &Poly) -> Result<Mat> {
    let n = p
        .degree()
        .finite()
        .filter(|&d| d >= 1)
        .ok_or(Error::NotMonic)?;
    if !p.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut m = Mat::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = Rational::one();
    }
    for j in 0..n {
        m[(n - 1, j)] = -p.coeff(j);
    }
    Ok(m)
}

/// The polynomial whose companion matrix is `m`, if `m` has companion shape.
pub fn companion_poly(m: &Mat) -> Option<Poly> {
    let n = m.square_dim().ok()?;
    if n == 0 {
        return None;
    }
    for i in 0..n - 1 {
        for j in 0..n {
            let expected = if j == i + 1 {
                Rational::one()
            } else {
                Rational::zero()
            };
            if m[(i, j)] != expected {
                return None;
            }
        }
    }
    let mut coeffs: Vec<Rational> = (0..n).map(|j| -m[(n - 1, j)].clone()).collect();
    coeffs.push(Rational::one());
    let p = Poly::from_coeffs(coeffs);
    debug_assert_eq!(char_poly(m).ok(), Some(p.clone()));
    Some(p)
}
