use super::{full_rank_factorization, inverse, rank, RealMatrix};
use crate::error::{Error, Result};

/// Moore-Penrose inverse through a full-rank factorization `m = BC`:
/// `C^T (C C^T)^-1 (B^T B)^-1 B^T`. The four Penrose equations are checked
/// on the result before it is returned.
pub fn moore_penrose(m: &RealMatrix) -> Result<RealMatrix> {
    let f = full_rank_factorization(m);
    if f.rank == 0 {
        return Ok(RealMatrix::zeros(m.cols(), m.rows()));
    }
    let (b, c) = (&f.left, &f.right);
    let ct = c.transpose();
    let bt = b.transpose();
    let x = &(&(&ct * &inverse(&(c * &ct))?) * &inverse(&(&bt * b))?) * &bt;
    verify_penrose(m, &x)?;
    Ok(x)
}

pub(crate) fn verify_penrose(m: &RealMatrix, x: &RealMatrix) -> Result<()> {
    let mx = m * x;
    let xm = x * m;
    let checks = [
        (&(&mx * m) == m, "E X E = E"),
        (&(&xm * x) == x, "X E X = X"),
        (mx.is_symmetric(), "(E X)^T = E X"),
        (xm.is_symmetric(), "(X E)^T = X E"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        None => Ok(()),
        Some((_, eq)) => Err(Error::InternalVerificationFailure(format!(
            "Moore-Penrose inverse fails {eq}"
        ))),
    }
}

/// Smallest `k >= 0` with `rk(m^(k+1)) = rk(m^k)`.
pub fn matrix_index(m: &RealMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "matrix_index",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let mut power = RealMatrix::identity(m.rows());
    let mut prev = m.rows();
    for k in 0..=m.rows() {
        power = &power * m;
        let next = rank(&power);
        if next == prev {
            return Ok(k);
        }
        prev = next;
    }
    unreachable!("rank sequence of a square matrix stabilises within n steps")
}

/// Group inverse of an index-at-most-one matrix: `B (C B)^-2 C` for a
/// full-rank factorization `m = BC`, checked against `EXE = E`, `XEX = X`
/// and `EX = XE`.
pub fn group_inverse(m: &RealMatrix) -> Result<RealMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "group_inverse",
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let f = full_rank_factorization(m);
    let rank_sq = rank(&(m * m));
    if rank_sq != f.rank {
        return Err(Error::IndexNotOne {
            index: matrix_index(m)?,
            rank: f.rank,
            rank_sq,
        });
    }
    if f.rank == 0 {
        return Ok(RealMatrix::zeros(m.rows(), m.cols()));
    }
    let cb_inv = inverse(&(&f.right * &f.left))?;
    let x = &(&f.left * &(&cb_inv * &cb_inv)) * &f.right;
    verify_group(m, &x)?;
    Ok(x)
}

pub(crate) fn verify_group(m: &RealMatrix, x: &RealMatrix) -> Result<()> {
    let mx = m * x;
    let xm = x * m;
    let checks = [
        (&(&mx * m) == m, "E X E = E"),
        (&(&xm * x) == x, "X E X = X"),
        (mx == xm, "E X = X E"),
    ];
    match checks.iter().find(|(ok, _)| !ok) {
        None => Ok(()),
        Some((_, eq)) => Err(Error::InternalVerificationFailure(format!(
            "group inverse fails {eq}"
        ))),
    }
}
