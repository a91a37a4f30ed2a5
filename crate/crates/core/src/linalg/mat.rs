use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::bareiss;
use super::rational::{rat, Rational};
use crate::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Mat {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Mat {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { c.clone() } else { Rational::zero() },
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from equally long rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Mat::new(n, cols, entries)
    }

    /// Integer matrix literal, mostly for tests: `Mat::from_ints(&[&[1, 2], &[3, 4]])`.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
        .expect("ragged integer matrix literal")
    }

    pub fn from_columns(columns: &[Vec<Rational>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::Dimension {
                expected: rows,
                found: bad.len(),
            });
        }
        Ok(Self::from_fn(rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    /// Block-diagonal matrix with square blocks along the diagonal.
    pub fn block_diag(blocks: &[Mat]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut out = Mat::zeros(n, n);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(offset + i, offset + j)] = b[(i, j)].clone();
                }
            }
            offset += b.rows;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Dimension of a square matrix, or [`Error::NotSquare`].
    pub fn square_dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    pub fn checked_mul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Submatrix on the given row and column index lists (in order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> Result<Rational> {
        let n = self.square_dim()?;
        Ok(bareiss::determinant(n, self.entries.clone()))
    }

    /// Determinant by Laplace expansion along the first row. Exponential;
    /// kept as an independent cross-check for small matrices.
    pub fn det_cofactor(&self) -> Result<Rational> {
        let n = self.square_dim()?;
        let idx: Vec<usize> = (0..n).collect();
        Ok(laplace(self, &idx, &idx))
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m[(rank, c)].recip();
            for r in rank + 1..m.rows {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] * &inv;
                for j in c..m.cols {
                    let d = &f * &m[(rank, j)];
                    m[(r, j)] -= d;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact inverse by Gauss–Jordan elimination.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.square_dim()?;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for c in 0..n {
            let p = (c..n)
                .find(|&r| !a[(r, c)].is_zero())
                .ok_or(Error::Singular)?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let piv = a[(c, c)].recip();
            for j in 0..n {
                a[(c, j)] *= &piv;
                inv[(c, j)] *= &piv;
            }
            for r in 0..n {
                if r == c || a[(r, c)].is_zero() {
                    continue;
                }
                let f = a[(r, c)].clone();
                for j in 0..n {
                    let da = &f * &a[(c, j)];
                    a[(r, j)] -= da;
                    let di = &f * &inv[(c, j)];
                    inv[(r, j)] -= di;
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

fn laplace(m: &Mat, rows: &[usize], cols: &[usize]) -> Rational {
    match rows.len() {
        0 => Rational::one(),
        1 => m[(rows[0], cols[0])].clone(),
        _ => {
            let rest: Vec<usize> = rows[1..].to_vec();
            let mut acc = Rational::zero();
            for (k, &c) in cols.iter().enumerate() {
                let a = &m[(rows[0], c)];
                if a.is_zero() {
                    continue;
                }
                let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = a * laplace(m, &rest, &sub);
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

/// Panics on a dimension mismatch; use [`Mat::checked_mul`] otherwise.
impl Mul for &Mat {
    type Output = Mat;

    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl Add for &Mat {
    type Output = Mat;

    fn add(self, rhs: &Mat) -> Mat {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix sum dimension mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Mat {
    type Output = Mat;

    fn sub(self, rhs: &Mat) -> Mat {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "matrix difference dimension mismatch"
        );
        Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;

    fn neg(self) -> Mat {
        self.scale(&rat(-1))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
