use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use super::{OperatorOracle, OracleKind};
use crate::linalg::{Poly, Rational};
use crate::Result;

/// A polynomial in the time variable `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyFunction(pub Poly);

impl PolyFunction {
    pub fn poly(&self) -> &Poly {
        &self.0
    }
}

/// `Σ p_j(t) · e^{r_j t}` with pairwise distinct rates `r_j` and nonzero
/// polynomials `p_j`. Terms are kept sorted by rate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyExpFunction {
    terms: Vec<(Poly, Rational)>,
}

impl PolyExpFunction {
    /// Merges equal rates and drops zero polynomials.
    pub fn new(terms: impl IntoIterator<Item = (Poly, Rational)>) -> Self {
        let mut merged: Vec<(Poly, Rational)> = Vec::new();
        for (p, r) in terms {
            match merged.binary_search_by(|(_, q)| q.cmp(&r)) {
                Ok(pos) => merged[pos].0 = &merged[pos].0 + &p,
                Err(pos) => merged.insert(pos, (p, r)),
            }
        }
        merged.retain(|(p, _)| !p.is_zero());
        PolyExpFunction { terms: merged }
    }

    pub fn zero() -> Self {
        PolyExpFunction { terms: Vec::new() }
    }

    pub fn poly(p: Poly) -> Self {
        Self::new([(p, Rational::zero())])
    }

    /// `p(t) · e^{rate·t}`
    pub fn term(p: Poly, rate: Rational) -> Self {
        Self::new([(p, rate)])
    }

    pub fn terms(&self) -> &[(Poly, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `d/dt (p e^{rt}) = (p' + r p) e^{rt}`
    pub fn derivative(&self) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|(p, r)| (&p.derivative() + &p.scale(r), r.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.terms.iter().map(|(p, r)| (p.scale(c), r.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).cloned())
    }

    /// Exact value at `t` when every exponential factor is rational there
    /// (i.e. `rate · t = 0` for every term), `None` otherwise.
    pub fn eval_exact(&self, t: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (p, r) in &self.terms {
            if !(r * t).is_zero() {
                return None;
            }
            acc += p.eval(t);
        }
        Some(acc)
    }
}

impl fmt::Display for PolyExpFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (p, r)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if r.is_zero() {
                write!(f, "({})", p.display_in("t"))?;
            } else {
                write!(f, "({})·e^({r}t)", p.display_in("t"))?;
            }
        }
        Ok(())
    }
}

/// `d/dt` on polynomials.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PolyDerivative;

impl OperatorOracle for PolyDerivative {
    type Elem = PolyFunction;

    fn kind(&self) -> OracleKind {
        OracleKind::Derivative
    }

    fn zero(&self) -> PolyFunction {
        PolyFunction(Poly::zero())
    }

    fn add(&self, a: &PolyFunction, b: &PolyFunction) -> PolyFunction {
        PolyFunction(&a.0 + &b.0)
    }

    fn scale(&self, c: &Rational, v: &PolyFunction) -> PolyFunction {
        PolyFunction(v.0.scale(c))
    }

    fn apply(&self, v: &PolyFunction) -> Result<PolyFunction> {
        Ok(PolyFunction(v.0.derivative()))
    }

    fn equal(&self, a: &PolyFunction, b: &PolyFunction) -> Result<bool> {
        Ok(a == b)
    }
}

/// `d/dt` on polynomial-exponential functions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExpPolyDerivative;

impl OperatorOracle for ExpPolyDerivative {
    type Elem = PolyExpFunction;

    fn kind(&self) -> OracleKind {
        OracleKind::Derivative
    }

    fn zero(&self) -> PolyExpFunction {
        PolyExpFunction::zero()
    }

    fn add(&self, a: &PolyExpFunction, b: &PolyExpFunction) -> PolyExpFunction {
        a.add(b)
    }

    fn scale(&self, c: &Rational, v: &PolyExpFunction) -> PolyExpFunction {
        v.scale(c)
    }

    fn apply(&self, v: &PolyExpFunction) -> Result<PolyExpFunction> {
        Ok(v.derivative())
    }

    fn equal(&self, a: &PolyExpFunction, b: &PolyExpFunction) -> Result<bool> {
        Ok(a == b)
    }
}
