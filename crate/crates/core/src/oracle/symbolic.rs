use super::{OperatorOracle, OracleKind};
use crate::linalg::Rational;
use crate::reduction::ForcingExpr;
use crate::Result;

/// The formal space of forcing combinations `Σ c · A^m(φ_j)`, with `A`
/// acting by raising every derivative order by one. Evaluating a
/// determinant expansion here yields its symbolic right-hand side.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SymbolicOracle;

impl OperatorOracle for SymbolicOracle {
    type Elem = ForcingExpr;

    fn kind(&self) -> OracleKind {
        OracleKind::Symbolic
    }

    fn zero(&self) -> ForcingExpr {
        ForcingExpr::zero()
    }

    fn add(&self, a: &ForcingExpr, b: &ForcingExpr) -> ForcingExpr {
        a.add(b)
    }

    fn scale(&self, c: &Rational, v: &ForcingExpr) -> ForcingExpr {
        v.scale(c)
    }

    fn apply(&self, v: &ForcingExpr) -> Result<ForcingExpr> {
        Ok(v.raise(1))
    }

    fn apply_power(&self, m: usize, v: &ForcingExpr) -> Result<ForcingExpr> {
        Ok(v.raise(m))
    }

    fn equal(&self, a: &ForcingExpr, b: &ForcingExpr) -> Result<bool> {
        Ok(a == b)
    }
}
