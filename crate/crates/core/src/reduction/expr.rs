use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use num_traits::{One, Signed, Zero};

use crate::linalg::{Degree, Poly, Rational};
use crate::{Error, Result};

/// Which family of unknowns a variable belongs to: the original `x`, the
/// Jordan-basis `y`, or the rational-basis `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Y,
    Z,
}

/// A zero-based unknown; printed one-based (`x1`, `y2`, …).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: Family,
    pub index: usize,
}

impl Var {
    pub fn x(index: usize) -> Self {
        Var {
            family: Family::X,
            index,
        }
    }

    pub fn y(index: usize) -> Self {
        Var {
            family: Family::Y,
            index,
        }
    }

    pub fn z(index: usize) -> Self {
        Var {
            family: Family::Z,
            index,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::X => 'x',
            Family::Y => 'y',
            Family::Z => 'z',
        };
        write!(f, "{c}{}", self.index + 1)
    }
}

/// `coeff · A^order(φ_forcing)`, with a zero-based forcing index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForcingTerm {
    pub coeff: Rational,
    pub order: usize,
    pub forcing: usize,
}

/// A formal combination `Σ c · A^m(φ_j)`.
///
/// Normalized: at most one term per `(order, forcing)` pair, no zero
/// coefficients, sorted by descending order then ascending forcing index.
/// Two expressions are equal exactly when they are equal term for term.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ForcingExpr {
    terms: Vec<ForcingTerm>,
}

impl ForcingExpr {
    pub fn new(terms: impl IntoIterator<Item = ForcingTerm>) -> Self {
        let mut out: Vec<ForcingTerm> = Vec::new();
        for t in terms {
            let key = (core::cmp::Reverse(t.order), t.forcing);
            match out.binary_search_by(|u| (core::cmp::Reverse(u.order), u.forcing).cmp(&key)) {
                Ok(pos) => out[pos].coeff += t.coeff,
                Err(pos) => out.insert(pos, t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        ForcingExpr { terms: out }
    }

    pub fn zero() -> Self {
        ForcingExpr { terms: Vec::new() }
    }

    /// `c · A^order(φ_forcing)`
    pub fn term(coeff: Rational, order: usize, forcing: usize) -> Self {
        Self::new([ForcingTerm {
            coeff,
            order,
            forcing,
        }])
    }

    /// `φ_forcing`
    pub fn phi(forcing: usize) -> Self {
        Self::term(Rational::one(), 0, forcing)
    }

    /// `Σ_j row_j · φ_j`
    pub fn from_row(row: &[Rational]) -> Self {
        Self::new(row.iter().enumerate().map(|(j, c)| ForcingTerm {
            coeff: c.clone(),
            order: 0,
            forcing: j,
        }))
    }

    pub fn terms(&self) -> &[ForcingTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest derivative order present.
    pub fn max_order(&self) -> Option<usize> {
        self.terms.first().map(|t| t.order)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.terms.iter().map(|t| ForcingTerm {
            coeff: &t.coeff * c,
            order: t.order,
            forcing: t.forcing,
        }))
    }

    /// `A^m` applied to the whole expression.
    pub fn raise(&self, m: usize) -> Self {
        ForcingExpr {
            terms: self
                .terms
                .iter()
                .map(|t| ForcingTerm {
                    coeff: t.coeff.clone(),
                    order: t.order + m,
                    forcing: t.forcing,
                })
                .collect(),
        }
    }

    /// Human-readable form, `A(phi1) + phi2 - phi1`. Within one derivative
    /// order, the forcing `own` (the equation's own index) is printed last.
    pub fn render(&self, own: Option<usize>) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut terms: Vec<&ForcingTerm> = self.terms.iter().collect();
        terms.sort_by_key(|t| {
            (
                core::cmp::Reverse(t.order),
                Some(t.forcing) == own,
                t.forcing,
            )
        });
        let mut out = String::new();
        for t in terms {
            let negative = t.coeff.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = t.coeff.abs();
            if !mag.is_one() {
                if mag.is_integer() {
                    let _ = write!(out, "{mag} ");
                } else {
                    let _ = write!(out, "({mag}) ");
                }
            }
            let j = t.forcing + 1;
            let _ = match t.order {
                0 => write!(out, "phi{j}"),
                1 => write!(out, "A(phi{j})"),
                m => write!(out, "A^{m}(phi{j})"),
            };
        }
        out
    }
}

impl fmt::Display for ForcingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(None))
    }
}

/// One scalar operator equation `p(A)(target) = rhs`, with `p` monic of
/// degree at least one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedEquation {
    lhs: Poly,
    target: Var,
    rhs: ForcingExpr,
}

impl ReducedEquation {
    pub fn new(lhs: Poly, target: Var, rhs: ForcingExpr) -> Result<Self> {
        if !lhs.is_monic() || lhs.degree() < Degree::Finite(1) {
            return Err(Error::NotMonic);
        }
        Ok(ReducedEquation { lhs, target, rhs })
    }

    pub fn lhs(&self) -> &Poly {
        &self.lhs
    }

    pub fn target(&self) -> Var {
        self.target
    }

    pub fn rhs(&self) -> &ForcingExpr {
        &self.rhs
    }
}

pub(crate) fn render_operator(p: &Poly, arg: &str) -> String {
    let single_term = p.coeffs().iter().filter(|c| !c.is_zero()).count() == 1;
    if single_term && p.is_monic() {
        alloc::format!("{} {arg}", p.display_in("A"))
    } else {
        alloc::format!("({}) {arg}", p.display_in("A"))
    }
}

impl fmt::Display for ReducedEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let own = (self.target.family == Family::X).then_some(self.target.index);
        let mut lhs_arg = String::new();
        let _ = write!(lhs_arg, "{}", self.target);
        write!(
            f,
            "{} = {}",
            render_operator(&self.lhs, &lhs_arg),
            self.rhs.render(own)
        )
    }
}
