//! Exact rational linear algebra.

mod bareiss;
mod charpoly;
mod mat;
mod minors;
mod poly;
mod rational;

pub use charpoly::{adjugate_char_coeffs, char_poly, AdjugateCoeffs};
pub use mat::Mat;
pub use minors::delta_minor_sum;
pub use poly::{Degree, Poly};
pub use rational::{parse_rational, rat, ratio, Rational};
