use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::expr::{render_operator, ForcingExpr, ReducedEquation, Var};
use super::OperatorSystem;
use crate::canonical::{
    companion_poly, jordan_decomposition, rational_decomposition, Decomposition, RankOneSpec,
};
use crate::linalg::{delta_minor_sum, rat, Mat, Poly};
use crate::oracle::SymbolicOracle;
use crate::{Error, Result};

/// `target = operator(A)(source) + forcing`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingEquation {
    pub target: Var,
    pub source: Var,
    pub operator: Poly,
    pub forcing: ForcingExpr,
}

impl fmt::Display for CouplingEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut src = String::new();
        let _ = fmt::Write::write_fmt(&mut src, format_args!("{}", self.source));
        let applied = if self.operator == Poly::x() {
            alloc::format!("A({src})")
        } else {
            render_operator(&self.operator, &src)
        };
        if self.forcing.is_zero() {
            write!(f, "{} = {applied}", self.target)
        } else {
            let rendered = self.forcing.render(None);
            match rendered.strip_prefix('-') {
                Some(rest) => write!(f, "{} = {applied} - {rest}", self.target),
                None => write!(f, "{} = {applied} + {rendered}", self.target),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialEquation {
    Reduced(ReducedEquation),
    Coupling(CouplingEquation),
}

impl fmt::Display for PartialEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialEquation::Reduced(e) => e.fmt(f),
            PartialEquation::Coupling(e) => e.fmt(f),
        }
    }
}

/// The change of unknowns behind a partial reduction: new unknowns are
/// `T^{-1} x` and new forcing terms are `T^{-1} φ`, recorded row by row as
/// combinations of the original forcing symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisChange {
    pub decomposition: Decomposition,
    pub forcing: Vec<ForcingExpr>,
}

impl BasisChange {
    fn new(decomposition: Decomposition) -> Self {
        let inv = decomposition.transition_inverse();
        let forcing = (0..inv.rows())
            .map(|i| ForcingExpr::from_row(inv.row(i)))
            .collect();
        BasisChange {
            decomposition,
            forcing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSystem {
    pub equations: Vec<PartialEquation>,
    pub basis_change: BasisChange,
}

fn reduced(lhs: Poly, target: Var, rhs: ForcingExpr) -> PartialEquation {
    PartialEquation::Reduced(ReducedEquation::new(lhs, target, rhs).expect("monic lhs"))
}

/// Reduction through the Jordan form `diag(0, …, 0, s)`:
/// `A(y_j) = ψ_j` for `j < n` and `A(y_n) − s·y_n = ψ_n`, `ψ = S^{-1}φ`.
/// Needs `s = Σ b_i ≠ 0`.
pub fn partial_reduce_jordan(spec: &RankOneSpec) -> Result<PartialSystem> {
    if spec.is_degenerate() {
        return Err(Error::DegenerateJordan);
    }
    let n = spec.n();
    let s = spec.sum();
    let change = BasisChange::new(jordan_decomposition(spec)?);
    let mut equations = Vec::with_capacity(n);
    for j in 0..n - 1 {
        equations.push(reduced(Poly::x(), Var::y(j), change.forcing[j].clone()));
    }
    equations.push(reduced(
        Poly::linear_root(s),
        Var::y(n - 1),
        change.forcing[n - 1].clone(),
    ));
    Ok(PartialSystem {
        equations,
        basis_change: change,
    })
}

/// Reduction through the rational form, `ν = T^{-1}φ`:
/// `A(z_j) = ν_j` for `j ≤ n−2`,
/// `(A² − sA)(z_{n−1}) = ν_n + A(ν_{n−1}) − s·ν_{n−1}`, and
/// `A(z_n) − s·z_n = ν_n`. Valid for `s = 0` as well.
pub fn partial_reduce_rational(spec: &RankOneSpec) -> Result<PartialSystem> {
    let n = spec.n();
    let s = spec.sum();
    let change = BasisChange::new(rational_decomposition(spec)?);
    let nu = &change.forcing;
    let mut equations = Vec::with_capacity(n);
    for (j, nu_j) in nu.iter().enumerate().take(n - 2) {
        equations.push(reduced(Poly::x(), Var::z(j), nu_j.clone()));
    }
    let second_order = &Poly::x() * &Poly::linear_root(s.clone());
    let rhs = nu[n - 1]
        .add(&nu[n - 2].raise(1))
        .add(&nu[n - 2].scale(&-s.clone()));
    equations.push(reduced(second_order, Var::z(n - 2), rhs));
    equations.push(reduced(
        Poly::linear_root(s),
        Var::z(n - 1),
        nu[n - 1].clone(),
    ));
    Ok(PartialSystem {
        equations,
        basis_change: change,
    })
}

/// Partial reduction for a system whose rational canonical form is the
/// block-diagonal matrix of the given companion blocks, with a
/// caller-supplied transition `T` (`C = T^{-1} B T`).
///
/// Block `i` of size `m` starting at offset `ℓ` contributes the lead
/// equation `Δ_{C_i}(A)(y_{ℓ+1}) = Σ_k (−1)^{k−1} δ_k^1(C_i; A^{m−k}(ψ_block))`
/// and the couplings `y_{ℓ+r+1} = A(y_{ℓ+r}) − ψ_{ℓ+r}`.
pub fn partial_reduce_companion_blocks(
    canonical_blocks: &[Mat],
    transition: &Decomposition,
    sys: &OperatorSystem,
) -> Result<PartialSystem> {
    let mut polys = Vec::with_capacity(canonical_blocks.len());
    for (idx, block) in canonical_blocks.iter().enumerate() {
        polys.push(companion_poly(block).ok_or(Error::NotCompanion(idx))?);
    }
    let assembled = Mat::block_diag(canonical_blocks);
    if assembled.rows() != sys.n() {
        return Err(Error::Dimension {
            expected: sys.n(),
            found: assembled.rows(),
        });
    }
    if &assembled != transition.canonical() || !transition.is_valid_for(sys.matrix()) {
        return Err(Error::InconsistentTransition);
    }

    let change = BasisChange::new(transition.clone());
    let psi = &change.forcing;
    let symbolic = SymbolicOracle;
    let mut equations = Vec::with_capacity(sys.n());
    let mut offset = 0;
    for (block, delta) in canonical_blocks.iter().zip(polys) {
        let m = block.rows();
        let local = &psi[offset..offset + m];
        let mut rhs = ForcingExpr::zero();
        for k in 1..=m {
            let column: Vec<ForcingExpr> = local.iter().map(|p| p.raise(m - k)).collect();
            let d = delta_minor_sum(block, 0, k, &column, &symbolic)?;
            rhs = if k % 2 == 1 {
                rhs.add(&d)
            } else {
                rhs.add(&d.scale(&rat(-1)))
            };
        }
        equations.push(reduced(delta, Var::y(offset), rhs));
        for (r, psi_r) in local.iter().enumerate().take(m - 1) {
            equations.push(PartialEquation::Coupling(CouplingEquation {
                target: Var::y(offset + r + 1),
                source: Var::y(offset + r),
                operator: Poly::x(),
                forcing: psi_r.scale(&rat(-1)),
            }));
        }
        offset += m;
    }
    debug_assert!(equations.iter().all(|e| match e {
        PartialEquation::Coupling(c) => c.source.index < c.target.index,
        PartialEquation::Reduced(_) => true,
    }));
    Ok(PartialSystem {
        equations,
        basis_change: change,
    })
}

impl PartialSystem {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Lead equations only (the higher-order ones).
    pub fn reduced_equations(&self) -> impl Iterator<Item = &ReducedEquation> {
        self.equations.iter().filter_map(|e| match e {
            PartialEquation::Reduced(r) => Some(r),
            PartialEquation::Coupling(_) => None,
        })
    }

    /// True when every new forcing term is identically zero.
    pub fn is_homogeneous(&self) -> bool {
        self.equations.iter().all(|e| match e {
            PartialEquation::Reduced(r) => r.rhs().is_zero(),
            PartialEquation::Coupling(c) => c.forcing.is_zero(),
        })
    }
}
