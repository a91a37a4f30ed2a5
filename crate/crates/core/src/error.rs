use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("rank-one family needs n >= 2, got n = {0}")]
    TooSmall(usize),

    #[error("all-zero coefficient vector: B = O needs no reduction")]
    ZeroCoefficients,

    #[error("sum of coefficients is zero: no diagonal Jordan form, use the rational reduction")]
    DegenerateJordan,

    #[error("equation left-hand side must be monic of degree at least one")]
    NotMonic,

    #[error("block {0} is not a companion matrix")]
    NotCompanion(usize),

    #[error("transition matrix does not bring the system matrix to the given canonical form")]
    InconsistentTransition,

    #[error("sequence too short: {needed} valid entries needed, {available} available")]
    SequenceExhausted { needed: usize, available: usize },

    #[error("no valid sequence entries left to compare; lengthen the input sequences")]
    Inconclusive,
}
