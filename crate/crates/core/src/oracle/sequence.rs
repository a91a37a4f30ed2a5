use alloc::vec::Vec;

use num_traits::Zero;

use super::{OperatorOracle, OracleKind};
use crate::linalg::Rational;
use crate::{Error, Result};

/// A truncated rational sequence. Only the first `valid_length` entries are
/// trustworthy; every shift consumes one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceVec {
    values: Vec<Rational>,
    valid_length: usize,
}

impl SequenceVec {
    pub fn new(values: Vec<Rational>) -> Self {
        let valid_length = values.len();
        SequenceVec {
            values,
            valid_length,
        }
    }

    /// A sequence whose entries past `valid_length` are untrusted.
    pub fn with_valid_length(values: Vec<Rational>, valid_length: usize) -> Result<Self> {
        if valid_length > values.len() {
            return Err(Error::SequenceExhausted {
                needed: valid_length,
                available: values.len(),
            });
        }
        Ok(SequenceVec {
            values,
            valid_length,
        })
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(alloc::vec![Rational::zero(); len])
    }

    pub fn valid_length(&self) -> usize {
        self.valid_length
    }

    /// The trustworthy prefix.
    pub fn valid(&self) -> &[Rational] {
        &self.values[..self.valid_length]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Forward shift `(Ax)_k = x_{k+1}` on [`SequenceVec`]. `len` is the length
/// of the zero sequence it produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftOracle {
    len: usize,
}

impl ShiftOracle {
    pub fn new(len: usize) -> Self {
        ShiftOracle { len }
    }
}

impl OperatorOracle for ShiftOracle {
    type Elem = SequenceVec;

    fn kind(&self) -> OracleKind {
        OracleKind::Shift
    }

    fn zero(&self) -> SequenceVec {
        SequenceVec::zeros(self.len)
    }

    fn add(&self, a: &SequenceVec, b: &SequenceVec) -> SequenceVec {
        let n = a.valid_length.min(b.valid_length);
        SequenceVec::new(
            a.values[..n]
                .iter()
                .zip(&b.values[..n])
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    fn scale(&self, c: &Rational, v: &SequenceVec) -> SequenceVec {
        SequenceVec::new(v.valid().iter().map(|x| c * x).collect())
    }

    fn apply(&self, v: &SequenceVec) -> Result<SequenceVec> {
        self.apply_power(1, v)
    }

    fn apply_power(&self, m: usize, v: &SequenceVec) -> Result<SequenceVec> {
        if v.valid_length <= m {
            return Err(Error::SequenceExhausted {
                needed: m + 1,
                available: v.valid_length,
            });
        }
        Ok(SequenceVec::new(v.values[m..v.valid_length].to_vec()))
    }

    fn equal(&self, a: &SequenceVec, b: &SequenceVec) -> Result<bool> {
        let n = a.valid_length.min(b.valid_length);
        if n == 0 {
            return Err(Error::Inconclusive);
        }
        Ok(a.values[..n] == b.values[..n])
    }
}
