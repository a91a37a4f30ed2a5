//! Exact reduction of nonhomogeneous linear systems of operator equations
//! `A(x) = Bx + φ` into independent higher-order scalar equations.
//!
//! Everything in this crate is exact: scalars are arbitrary-precision
//! rationals and no floating point is used. The crate is `no_std` and only
//! needs an allocator.
//!
//! - [`linalg`]: rationals, polynomials, dense matrices, determinants, the
//!   characteristic polynomial and the adjugate of the characteristic matrix.
//! - [`canonical`]: closed-form Jordan and rational canonical decompositions
//!   for the rank-one family (all rows equal, or all columns equal).
//! - [`reduction`]: total and partial reduction as symbolic equations.
//! - [`oracle`]: concrete realizations of the operator `A` (shift on
//!   sequences, `d/dt` on polynomial-exponential functions) used to check
//!   reductions by substitution.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod canonical;
mod error;
pub mod linalg;
pub mod oracle;
pub mod reduction;

pub use error::{Error, Result};
pub use linalg::{Degree, Mat, Poly, Rational};
