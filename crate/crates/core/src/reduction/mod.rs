//! Partially and totally reduced systems as symbolic equations.
//!
//! Reductions never touch a concrete operator: every right-hand side is a
//! [`ForcingExpr`] over the forcing symbols `φ_1 … φ_n`, and the oracles in
//! [`crate::oracle`] evaluate them. The one exception is
//! [`total_reduce_minors`], which expands principal minors over concrete
//! operator-space columns.

mod expr;
mod partial;
mod total;

pub use expr::{Family, ForcingExpr, ForcingTerm, ReducedEquation, Var};
pub use partial::{
    partial_reduce_companion_blocks, partial_reduce_jordan, partial_reduce_rational, BasisChange,
    CouplingEquation, PartialEquation, PartialSystem,
};
pub use total::{total_reduce_adjugate, total_reduce_minors, total_reduce_rank_one};

use crate::linalg::Mat;
use crate::Result;

/// The system `A(x) = Bx + φ` with `n` unknowns `x_1 … x_n` and `n` forcing
/// symbols `φ_1 … φ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorSystem {
    matrix: Mat,
}

impl OperatorSystem {
    pub fn new(matrix: Mat) -> Result<Self> {
        matrix.square_dim()?;
        Ok(OperatorSystem { matrix })
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn variables(&self) -> alloc::vec::Vec<Var> {
        (0..self.n()).map(Var::x).collect()
    }
}
