use alloc::vec::Vec;

use super::{mat_apply, OperatorOracle};
use crate::linalg::Mat;
use crate::reduction::{Family, ForcingExpr, PartialEquation, PartialSystem, ReducedEquation, Var};
use crate::{Error, Result};

/// Result of substituting a candidate solution into a reduced system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    /// The first equation (by position) whose two sides differ.
    Fails {
        equation: usize,
        target: Var,
    },
}

impl CheckOutcome {
    pub fn holds(self) -> bool {
        self == CheckOutcome::Holds
    }
}

/// Forcing that makes `x` a solution: `φ_i = A(x_i) − Σ_j B_ij x_j`.
pub fn synthesize_instance<O: OperatorOracle>(
    b: &Mat,
    x: &[O::Elem],
    oracle: &O,
) -> Result<Vec<O::Elem>> {
    let n = b.square_dim()?;
    if x.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: x.len(),
        });
    }
    let bx = mat_apply(oracle, b, x)?;
    x.iter()
        .zip(&bx)
        .map(|(xi, bxi)| Ok(oracle.sub(&oracle.apply(xi)?, bxi)))
        .collect()
}

/// `Σ c · A^m(φ_j)` with concrete forcing elements.
pub fn eval_forcing<O: OperatorOracle>(
    oracle: &O,
    expr: &ForcingExpr,
    phi: &[O::Elem],
) -> Result<O::Elem> {
    let mut parts = Vec::with_capacity(expr.terms().len());
    for t in expr.terms() {
        let base = phi.get(t.forcing).ok_or(Error::IndexOutOfRange {
            index: t.forcing,
            bound: phi.len(),
        })?;
        parts.push((t.coeff.clone(), oracle.apply_power(t.order, base)?));
    }
    Ok(oracle.combine(parts.iter().map(|(c, v)| (c, v))))
}

fn lookup<T>(values: &[T], var: Var) -> Result<&T> {
    values.get(var.index).ok_or(Error::IndexOutOfRange {
        index: var.index,
        bound: values.len(),
    })
}

/// Substitutes `x` and `φ` into each equation `p(A)(x_i) = rhs_i` and
/// compares both sides exactly.
///
/// For the shift oracle, running out of trustworthy sequence entries is an
/// error ([`Error::SequenceExhausted`] or [`Error::Inconclusive`]), never a
/// silent pass.
pub fn check_reduced<O: OperatorOracle>(
    reduced: &[ReducedEquation],
    x: &[O::Elem],
    phi: &[O::Elem],
    oracle: &O,
) -> Result<CheckOutcome> {
    for (pos, eq) in reduced.iter().enumerate() {
        let lhs = oracle.eval_poly(eq.lhs(), lookup(x, eq.target())?)?;
        let rhs = eval_forcing(oracle, eq.rhs(), phi)?;
        if !oracle.equal(&lhs, &rhs)? {
            return Ok(CheckOutcome::Fails {
                equation: pos,
                target: eq.target(),
            });
        }
    }
    Ok(CheckOutcome::Holds)
}

/// Checks a partially reduced system against a solution `x` of the original
/// system: the new unknowns are `T^{-1} x` and every equation, reduced or
/// coupling, must hold exactly.
pub fn check_partial<O: OperatorOracle>(
    system: &PartialSystem,
    x: &[O::Elem],
    phi: &[O::Elem],
    oracle: &O,
) -> Result<CheckOutcome> {
    let t_inv = system.basis_change.decomposition.transition_inverse();
    let y = mat_apply(oracle, t_inv, x)?;
    let unknowns = |v: Var| -> Result<&O::Elem> {
        match v.family {
            Family::X => lookup(x, v),
            Family::Y | Family::Z => lookup(&y, v),
        }
    };
    for (pos, eq) in system.equations.iter().enumerate() {
        let (ok, target) = match eq {
            PartialEquation::Reduced(r) => {
                let lhs = oracle.eval_poly(r.lhs(), unknowns(r.target())?)?;
                let rhs = eval_forcing(oracle, r.rhs(), phi)?;
                (oracle.equal(&lhs, &rhs)?, r.target())
            }
            PartialEquation::Coupling(c) => {
                let applied = oracle.eval_poly(&c.operator, unknowns(c.source)?)?;
                let rhs = oracle.add(&applied, &eval_forcing(oracle, &c.forcing, phi)?);
                (oracle.equal(unknowns(c.target)?, &rhs)?, c.target)
            }
        };
        if !ok {
            return Ok(CheckOutcome::Fails {
                equation: pos,
                target,
            });
        }
    }
    Ok(CheckOutcome::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{build_matrix, Orientation, RankOneSpec};
    use crate::linalg::{rat, Poly};
    use crate::oracle::{
        ExpPolyDerivative, PolyDerivative, PolyExpFunction, PolyFunction, SequenceVec, ShiftOracle,
    };
    use crate::reduction::{
        partial_reduce_jordan, partial_reduce_rational, total_reduce_rank_one, ForcingTerm,
    };
    use alloc::vec;

    fn hat11() -> RankOneSpec {
        RankOneSpec::from_ints(&[1, 1], Orientation::Hat).unwrap()
    }

    fn pf(c: &[i64]) -> PolyFunction {
        PolyFunction(Poly::from_ints(c))
    }

    #[test]
    fn synthesize_worked_example() {
        let b = build_matrix(&hat11());
        let x = vec![pf(&[0, 1]), pf(&[1])];
        let phi = synthesize_instance(&b, &x, &PolyDerivative).unwrap();
        assert_eq!(phi, vec![pf(&[0, -1]), pf(&[-1, -1])]);
    }

    #[test]
    fn synthesize_trivial_cases() {
        let b = build_matrix(&hat11());
        let zero = vec![pf(&[]), pf(&[])];
        assert_eq!(
            synthesize_instance(&b, &zero, &PolyDerivative).unwrap(),
            zero
        );

        let x = vec![pf(&[1, 2, 3]), pf(&[0, 0, 1])];
        let phi = synthesize_instance(&Mat::zeros(2, 2), &x, &PolyDerivative).unwrap();
        assert_eq!(phi, vec![pf(&[2, 6]), pf(&[0, 2])]);

        assert!(matches!(
            synthesize_instance(&b, &x[..1], &PolyDerivative),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn worked_example_checks() {
        let eqs = total_reduce_rank_one(&hat11());
        let x = vec![pf(&[0, 1]), pf(&[1])];
        let phi = vec![pf(&[0, -1]), pf(&[-1, -1])];
        assert_eq!(
            check_reduced(&eqs, &x, &phi, &PolyDerivative).unwrap(),
            CheckOutcome::Holds
        );
        // x1'' − 2x1' = −2
        let lhs = PolyDerivative.eval_poly(eqs[0].lhs(), &x[0]).unwrap();
        assert_eq!(lhs, pf(&[-2]));
    }

    #[test]
    fn homogeneous_zero_solution() {
        let eqs = total_reduce_rank_one(&hat11());
        let z = vec![PolyExpFunction::zero(), PolyExpFunction::zero()];
        assert!(check_reduced(&eqs, &z, &z, &ExpPolyDerivative)
            .unwrap()
            .holds());
    }

    #[test]
    fn perturbation_is_detected() {
        let eqs = total_reduce_rank_one(&hat11());
        let mut bad = eqs.clone();
        let perturbed = bad[1].rhs().add(&ForcingExpr::new([ForcingTerm {
            coeff: rat(1),
            order: 0,
            forcing: 0,
        }]));
        bad[1] = ReducedEquation::new(bad[1].lhs().clone(), bad[1].target(), perturbed).unwrap();
        let x = vec![pf(&[0, 1]), pf(&[1])];
        let phi = vec![pf(&[0, -1]), pf(&[-1, -1])];
        assert_eq!(
            check_reduced(&bad, &x, &phi, &PolyDerivative).unwrap(),
            CheckOutcome::Fails {
                equation: 1,
                target: Var::x(1)
            }
        );
    }

    #[test]
    fn short_sequences_are_inconclusive() {
        let eqs = total_reduce_rank_one(&hat11());
        let s = |v: &[i64]| SequenceVec::new(v.iter().map(|&q| rat(q)).collect());
        let oracle = ShiftOracle::new(3);
        let x = vec![s(&[1, 2]), s(&[3, 4])];
        let phi = vec![s(&[1]), s(&[2])];
        assert!(matches!(
            check_reduced(&eqs, &x, &phi, &oracle),
            Err(Error::SequenceExhausted { .. })
        ));
    }

    #[test]
    fn partial_systems_check() {
        let spec = RankOneSpec::from_ints(&[2, -1, 3], Orientation::Check).unwrap();
        let b = build_matrix(&spec);
        let x = vec![pf(&[1, 2]), pf(&[0, 0, 3]), pf(&[-1, 0, 0, 1])];
        let phi = synthesize_instance(&b, &x, &PolyDerivative).unwrap();
        let j = partial_reduce_jordan(&spec).unwrap();
        assert!(check_partial(&j, &x, &phi, &PolyDerivative)
            .unwrap()
            .holds());
        let r = partial_reduce_rational(&spec).unwrap();
        assert!(check_partial(&r, &x, &phi, &PolyDerivative)
            .unwrap()
            .holds());
        // x that does not solve the system is caught
        let wrong = vec![pf(&[1, 2]), pf(&[0, 0, 3]), pf(&[5])];
        assert!(!check_partial(&r, &wrong, &phi, &PolyDerivative)
            .unwrap()
            .holds());
    }
}
