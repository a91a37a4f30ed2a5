use alloc::vec::Vec;

use num_traits::One;

use super::expr::{ForcingExpr, ForcingTerm, ReducedEquation, Var};
use super::OperatorSystem;
use crate::canonical::{rank_one_char_poly, Orientation, RankOneSpec};
use crate::linalg::{adjugate_char_coeffs, char_poly, delta_minor_sum, rat};
use crate::oracle::OperatorOracle;
use crate::{Error, Result};

/// Total reduction through the adjugate of the characteristic matrix:
/// `Δ_B(A)(x_i) = Σ_{k=1}^n row_i(B_{k−1}) · A^{n−k}(φ)`.
pub fn total_reduce_adjugate(sys: &OperatorSystem) -> Result<Vec<ReducedEquation>> {
    let b = sys.matrix();
    let n = sys.n();
    let delta = char_poly(b)?;
    let adj = adjugate_char_coeffs(b)?;
    (0..n)
        .map(|i| {
            let rhs = ForcingExpr::new((1..=n).flat_map(|k| {
                adj.coeff(k - 1)
                    .row(i)
                    .iter()
                    .enumerate()
                    .map(move |(j, c)| ForcingTerm {
                        coeff: c.clone(),
                        order: n - k,
                        forcing: j,
                    })
            }));
            ReducedEquation::new(delta.clone(), Var::x(i), rhs)
        })
        .collect()
}

/// Evaluated right-hand sides of the total reduction through principal
/// minors: `Σ_{k=1}^n (−1)^{k−1} δ_k^i(B; A^{n−k}(φ))` for every `i`.
pub fn total_reduce_minors<O: OperatorOracle>(
    sys: &OperatorSystem,
    oracle: &O,
    forcing: &[O::Elem],
) -> Result<Vec<O::Elem>> {
    let b = sys.matrix();
    let n = sys.n();
    if forcing.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: forcing.len(),
        });
    }
    // powers[m][j] = A^m(φ_j)
    let mut powers: Vec<Vec<O::Elem>> = Vec::with_capacity(n);
    powers.push(forcing.to_vec());
    for m in 1..n {
        let next = powers[m - 1]
            .iter()
            .map(|v| oracle.apply(v))
            .collect::<Result<Vec<_>>>()?;
        powers.push(next);
    }

    (0..n)
        .map(|i| {
            let mut acc: Option<O::Elem> = None;
            for k in 1..=n {
                let delta = delta_minor_sum(b, i, k, &powers[n - k], oracle)?;
                let signed = if k % 2 == 1 {
                    delta
                } else {
                    oracle.scale(&rat(-1), &delta)
                };
                acc = Some(match acc {
                    None => signed,
                    Some(a) => oracle.add(&a, &signed),
                });
            }
            Ok(acc.expect("n >= 1"))
        })
        .collect()
}

/// Closed-form total reduction for the rank-one family.
///
/// `B̂`: `A^{n−1}(φ_i) + Σ_{j≠i} (b_i A^{n−2}(φ_j) − b_j A^{n−2}(φ_i))`.
/// `B̌`: `A^{n−1}(φ_i) + Σ_{j≠i} b_j (A^{n−2}(φ_j) − A^{n−2}(φ_i))`.
/// The left-hand side is `λ^{n−1}(λ − Σ b)` in both cases.
pub fn total_reduce_rank_one(spec: &RankOneSpec) -> Vec<ReducedEquation> {
    let n = spec.n();
    let b = spec.b();
    let delta = rank_one_char_poly(spec);
    let low = n - 2;
    (0..n)
        .map(|i| {
            let mut terms = Vec::with_capacity(2 * n);
            terms.push(ForcingTerm {
                coeff: One::one(),
                order: n - 1,
                forcing: i,
            });
            for j in (0..n).filter(|&j| j != i) {
                let (own, other) = match spec.orientation() {
                    Orientation::Hat => (-b[j].clone(), b[i].clone()),
                    Orientation::Check => (-b[j].clone(), b[j].clone()),
                };
                terms.push(ForcingTerm {
                    coeff: other,
                    order: low,
                    forcing: j,
                });
                terms.push(ForcingTerm {
                    coeff: own,
                    order: low,
                    forcing: i,
                });
            }
            ReducedEquation::new(delta.clone(), Var::x(i), ForcingExpr::new(terms))
                .expect("λ^{n−1}(λ − s) is monic")
        })
        .collect()
}
