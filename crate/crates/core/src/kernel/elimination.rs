use num_traits::{One, Zero};

use super::integer::{integer_rank, scaled};
use super::{RealMatrix, Rational};
use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RealMatrix,
    pub pivots: Vec<usize>,
}

/// `m = left * right` with `left` of full column rank and `right` of full
/// row rank. A zero matrix factors through rank zero with empty factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullRankFactorization {
    pub left: RealMatrix,
    pub right: RealMatrix,
    pub rank: usize,
}

/// Gauss-Jordan elimination. The pivot in each column is the first nonzero
/// entry at or below the current row.
pub fn rref(m: &RealMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let v = &a[(i, j)] - &factor * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &RealMatrix) -> usize {
    let rows = (0..m.rows()).map(|i| scaled(m.row(i).iter()).0).collect();
    integer_rank(rows, m.cols())
}

/// `right` is the nonzero rows of the rref, `left` the pivot columns of `m`.
pub fn full_rank_factorization(m: &RealMatrix) -> FullRankFactorization {
    let Rref { matrix, pivots } = rref(m);
    let rank = pivots.len();
    FullRankFactorization {
        left: m.select_columns(&pivots),
        right: matrix.leading_rows(rank),
        rank,
    }
}

pub fn inverse(m: &RealMatrix) -> Result<RealMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "inverse",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let aug = RealMatrix::compose(&[vec![m, &RealMatrix::identity(n)]])?;
    let Rref { matrix, pivots } = rref(&aug);
    if pivots.len() < n || pivots[..n].last().is_some_and(|&p| p >= n) {
        return Err(Error::Singular);
    }
    Ok(matrix.block(0, n, n, n))
}

/// Affine solution set `particular + span(nullspace)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: RealMatrix,
    pub nullspace: Vec<RealMatrix>,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}

/// Solves `a x = b` for a column vector `b`. Returns `None` when the system
/// is inconsistent.
pub fn solve(a: &RealMatrix, b: &RealMatrix) -> Result<Option<Solution>> {
    if b.cols() != 1 || b.rows() != a.rows() {
        return Err(Error::ShapeMismatch {
            op: "solve",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let n = a.cols();
    let aug = RealMatrix::compose(&[vec![a, b]])?;
    let Rref { matrix, pivots } = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut particular = RealMatrix::zeros(n, 1);
    for (row, &p) in pivots.iter().enumerate() {
        particular[(p, 0)] = matrix[(row, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = RealMatrix::zeros(n, 1);
            v[(f, 0)] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[(p, 0)] = -&matrix[(row, f)];
            }
            v
        })
        .collect();
    Ok(Some(Solution {
        particular,
        nullspace,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::ratio;

    fn m(rows: &[&[i64]]) -> RealMatrix {
        RealMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn rref_examples() {
        let r = rref(&m(&[&[2, 4], &[1, 2]]));
        assert_eq!(r.matrix, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);

        let id = RealMatrix::identity(3);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);

        let r = rref(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.matrix, RealMatrix::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 0]])), 2);
        assert_eq!(rank(&RealMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&m(&[&[1, 1], &[1, 1]])), 1);
        assert_eq!(rank(&RealMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn full_rank_factorization_examples() {
        let f = full_rank_factorization(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!(f.left, m(&[&[1], &[1]]));
        assert_eq!(f.right, m(&[&[1, 1]]));

        let f = full_rank_factorization(&RealMatrix::identity(2));
        assert_eq!(f.left, RealMatrix::identity(2));
        assert_eq!(f.right, RealMatrix::identity(2));

        let a = m(&[&[1, 1], &[0, 0], &[0, 0]]);
        let f = full_rank_factorization(&a);
        assert_eq!(f.rank, 1);
        assert_eq!(f.left, m(&[&[1], &[0], &[0]]));
        assert_eq!(f.right, m(&[&[1, 1]]));
        assert_eq!(&f.left * &f.right, a);
    }

    #[test]
    fn zero_matrix_factors_through_rank_zero() {
        let f = full_rank_factorization(&RealMatrix::zeros(2, 3));
        assert_eq!(f.rank, 0);
        assert_eq!(f.left.shape(), (2, 0));
        assert_eq!(f.right.shape(), (0, 3));
        assert_eq!(&f.left * &f.right, RealMatrix::zeros(2, 3));
    }

    #[test]
    fn inverse_of_small_matrices() {
        assert_eq!(inverse(&m(&[&[2, 1], &[1, 1]])).unwrap(), m(&[&[1, -1], &[-1, 2]]));
        assert_eq!(inverse(&m(&[&[3]])).unwrap()[(0, 0)], ratio(1, 3));
        assert_eq!(inverse(&m(&[&[1, 2], &[2, 4]])), Err(Error::Singular));
        assert!(matches!(inverse(&RealMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
        assert_eq!(inverse(&RealMatrix::zeros(0, 0)).unwrap().shape(), (0, 0));
    }

    #[test]
    fn solve_reports_nullspace_and_inconsistency() {
        let a = m(&[&[1, 1]]);
        let s = solve(&a, &m(&[&[2]])).unwrap().unwrap();
        assert_eq!(&a * &s.particular, m(&[&[2]]));
        assert_eq!(s.nullspace.len(), 1);
        assert!((&a * &s.nullspace[0]).is_zero());

        let a = m(&[&[1, 0], &[1, 0]]);
        assert_eq!(solve(&a, &m(&[&[1], &[2]])).unwrap(), None);

        let s = solve(&m(&[&[2, 0], &[0, 4]]), &m(&[&[1], &[1]])).unwrap().unwrap();
        assert!(s.is_unique());
        assert_eq!(s.particular[(0, 0)], ratio(1, 2));
        assert_eq!(s.particular[(1, 0)], ratio(1, 4));
    }
}
