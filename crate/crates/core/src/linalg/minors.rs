use alloc::vec::Vec;

use num_traits::Zero;

use super::mat::Mat;
use crate::oracle::OperatorOracle;
use crate::{Error, Result};

/// `δ_k^i(B; v)`: the sum of the order-`k` principal minors that contain
/// column `i`, taken in the matrix obtained from `b` by replacing column `i`
/// with the column `v` of operator-space elements.
///
/// Each minor is expanded along the replaced column, so the result is a
/// rational combination of the entries of `v`. Indices are zero-based;
/// `1 <= k <= n`. Enumerates all `C(n−1, k−1)` index sets.
pub fn delta_minor_sum<O: OperatorOracle>(
    b: &Mat,
    i: usize,
    k: usize,
    v: &[O::Elem],
    oracle: &O,
) -> Result<O::Elem> {
    let n = b.square_dim()?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, bound: n });
    }
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange {
            index: k,
            bound: n + 1,
        });
    }
    if v.len() != n {
        return Err(Error::Dimension {
            expected: n,
            found: v.len(),
        });
    }

    let others: Vec<usize> = (0..n).filter(|&r| r != i).collect();
    // Scalar weight on each v_r, accumulated over all index sets.
    let mut weights = alloc::vec![crate::Rational::zero(); n];
    for_each_subset(others.len(), k - 1, |chosen| {
        let mut set: Vec<usize> = chosen.iter().map(|&c| others[c]).collect();
        set.push(i);
        set.sort_unstable();
        let col_pos = set.iter().position(|&s| s == i).expect("i is in the set");
        let cols: Vec<usize> = set.iter().copied().filter(|&s| s != i).collect();
        for (row_pos, &r) in set.iter().enumerate() {
            let rows: Vec<usize> = set.iter().copied().filter(|&s| s != r).collect();
            let minor = b.submatrix(&rows, &cols).det().expect("square submatrix");
            if minor.is_zero() {
                continue;
            }
            if (row_pos + col_pos) % 2 == 0 {
                weights[r] += minor;
            } else {
                weights[r] -= minor;
            }
        }
    });

    Ok(oracle.combine(weights.iter().zip(v)))
}

/// Calls `f` with every `k`-subset of `0..n`, as increasing index lists.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance to the next combination in lexicographic order
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Rational};
    use crate::oracle::ScalarOracle;
    use alloc::vec;

    #[test]
    fn subsets_are_binomial() {
        let mut count = 0;
        for_each_subset(5, 2, |_| count += 1);
        assert_eq!(count, 10);
        let mut empty = 0;
        for_each_subset(3, 0, |s| {
            assert!(s.is_empty());
            empty += 1;
        });
        assert_eq!(empty, 1);
    }

    #[test]
    fn order_one_is_the_entry() {
        let b = Mat::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let v: Vec<Rational> = vec![rat(11), rat(13), rat(17)];
        assert_eq!(
            delta_minor_sum(&b, 1, 1, &v, &ScalarOracle::identity()).unwrap(),
            rat(13)
        );
    }

    #[test]
    fn full_order_is_replaced_determinant() {
        let b = Mat::from_ints(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let v = vec![rat(11), rat(13), rat(17)];
        let mut replaced = b.clone();
        for r in 0..3 {
            replaced[(r, 2)] = v[r].clone();
        }
        assert_eq!(
            delta_minor_sum(&b, 2, 3, &v, &ScalarOracle::identity()).unwrap(),
            replaced.det().unwrap()
        );
    }

    #[test]
    fn two_by_two_rank_one() {
        // det[[p, 1], [q, 1]] = p - q
        let b = Mat::from_ints(&[&[1, 1], &[1, 1]]);
        let v = vec![rat(7), rat(3)];
        assert_eq!(
            delta_minor_sum(&b, 0, 2, &v, &ScalarOracle::identity()).unwrap(),
            rat(4)
        );
    }

    #[test]
    fn bad_arguments() {
        let b = Mat::identity(2);
        let v = vec![rat(1), rat(2)];
        assert!(matches!(
            delta_minor_sum(&b, 2, 1, &v, &ScalarOracle::identity()),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(delta_minor_sum(&b, 0, 0, &v, &ScalarOracle::identity()).is_err());
        assert!(delta_minor_sum(&b, 0, 3, &v, &ScalarOracle::identity()).is_err());
        assert!(matches!(
            delta_minor_sum(&b, 0, 1, &v[..1], &ScalarOracle::identity()),
            Err(Error::Dimension { .. })
        ));
    }
}
