//! Concrete realizations of the pair `(V, A)`.
//!
//! A reduction is a statement about an abstract linear operator `A` on a
//! vector space `V`. The oracles here pick a concrete `V` with exact
//! equality so that a reduced system can be checked by substitution:
//!
//! - [`ShiftOracle`]: `A` is the forward shift on truncated rational
//!   sequences ([`SequenceVec`]).
//! - [`PolyDerivative`] and [`ExpPolyDerivative`]: `A = d/dt` on
//!   polynomials and on polynomial-exponential functions.
//! - [`SymbolicOracle`]: `V` is the space of formal forcing combinations
//!   and `A` raises every derivative order by one.
//! - [`ScalarOracle`]: `V = Q` and `A` multiplies by a fixed rational.

mod check;
mod function;
mod sequence;
mod symbolic;

use alloc::vec::Vec;
use core::fmt::Debug;

pub use check::{check_partial, check_reduced, eval_forcing, synthesize_instance, CheckOutcome};
pub use function::{ExpPolyDerivative, PolyDerivative, PolyExpFunction, PolyFunction};
pub use sequence::{SequenceVec, ShiftOracle};
pub use symbolic::SymbolicOracle;

use crate::linalg::{rat, Poly, Rational};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Shift,
    Derivative,
    Symbolic,
    Scalar,
}

/// A linear operator `A` on a vector space `V` over the rationals, with
/// the vector-space operations needed to evaluate reductions.
pub trait OperatorOracle {
    type Elem: Clone + Debug;

    fn kind(&self) -> OracleKind;

    fn zero(&self) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn scale(&self, c: &Rational, v: &Self::Elem) -> Self::Elem;

    /// One application of `A`.
    fn apply(&self, v: &Self::Elem) -> Result<Self::Elem>;

    /// Exact structural equality. Errors when the elements carry too little
    /// information to decide (exhausted sequences).
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(&rat(-1), b))
    }

    /// `A^m(v)`; `A^0(v) = v`.
    fn apply_power(&self, m: usize, v: &Self::Elem) -> Result<Self::Elem> {
        let mut out = v.clone();
        for _ in 0..m {
            out = self.apply(&out)?;
        }
        Ok(out)
    }

    /// `p(A)(v) = Σ p_k A^k(v)`.
    fn eval_poly(&self, p: &Poly, v: &Self::Elem) -> Result<Self::Elem> {
        let Some(d) = p.degree().finite() else {
            return Ok(self.zero());
        };
        // Horner: p_d v, then A(acc) + p_k v downwards.
        let mut acc = self.scale(&p.coeff(d), v);
        for k in (0..d).rev() {
            acc = self.add(&self.apply(&acc)?, &self.scale(&p.coeff(k), v));
        }
        Ok(acc)
    }

    /// `Σ c_j v_j`, the zero element for an empty list.
    fn combine<'a, I>(&self, terms: I) -> Self::Elem
    where
        I: IntoIterator<Item = (&'a Rational, &'a Self::Elem)>,
        Self::Elem: 'a,
    {
        let mut acc: Option<Self::Elem> = None;
        for (c, v) in terms {
            let t = self.scale(c, v);
            acc = Some(match acc {
                None => t,
                Some(a) => self.add(&a, &t),
            });
        }
        acc.unwrap_or_else(|| self.zero())
    }

    fn combine_all(&self, coeffs: &[Rational], elems: &[Self::Elem]) -> Self::Elem {
        self.combine(coeffs.iter().zip(elems))
    }
}

/// `V = Q`, `A(v) = factor · v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarOracle {
    factor: Rational,
}

impl ScalarOracle {
    pub fn new(factor: Rational) -> Self {
        ScalarOracle { factor }
    }

    pub fn identity() -> Self {
        Self::new(rat(1))
    }
}

impl OperatorOracle for ScalarOracle {
    type Elem = Rational;

    fn kind(&self) -> OracleKind {
        OracleKind::Scalar
    }

    fn zero(&self) -> Rational {
        rat(0)
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn scale(&self, c: &Rational, v: &Rational) -> Rational {
        c * v
    }

    fn apply(&self, v: &Rational) -> Result<Rational> {
        Ok(&self.factor * v)
    }

    fn equal(&self, a: &Rational, b: &Rational) -> Result<bool> {
        Ok(a == b)
    }
}

/// Applies a rational matrix to a column of operator-space elements:
/// `out_i = Σ_j m_ij v_j`.
pub fn mat_apply<O: OperatorOracle>(
    oracle: &O,
    m: &crate::Mat,
    v: &[O::Elem],
) -> Result<Vec<O::Elem>> {
    if m.cols() != v.len() {
        return Err(crate::Error::Dimension {
            expected: m.cols(),
            found: v.len(),
        });
    }
    Ok((0..m.rows())
        .map(|i| oracle.combine(m.row(i).iter().zip(v)))
        .collect())
}
