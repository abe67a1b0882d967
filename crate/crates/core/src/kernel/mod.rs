//! Exact dense linear algebra over the rationals.
//!
//! Every routine here is exact: rank, echelon forms, factorizations and
//! generalized inverses are computed in `BigRational` with no tolerance.

mod elimination;
mod integer;
mod inverse;
mod matrix;

pub use elimination::{full_rank_factorization, inverse, rank, rref, solve, FullRankFactorization, Rref, Solution};
pub use inverse::{group_inverse, matrix_index, moore_penrose};
pub use matrix::RealMatrix;

pub use num_rational::BigRational as Rational;

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Shorthand for `num/den`, reduced.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
