//! Dual matrices `E + eps E0` with `eps^2 = 0` and their generalized inverses.

mod inverse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::kernel::{Rational, RealMatrix};

pub use inverse::{
    dggi, dmpgi, dmpgi_exists, dmpgi_existence_routes, dual_group_failures, dual_index_one,
    dual_penrose_failures, dual_rank, gdgi, mpdgi, DualRankValue, ExistenceRoutes,
};

/// `std + eps * dual`, both parts of the same shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct DualMatrix {
    std: RealMatrix,
    dual: RealMatrix,
}

impl DualMatrix {
    pub fn new(std: RealMatrix, dual: RealMatrix) -> Result<Self> {
        if std.shape() != dual.shape() {
            return Err(Error::ShapeMismatch {
                op: "DualMatrix::new",
                left: std.shape(),
                right: dual.shape(),
            });
        }
        Ok(Self { std, dual })
    }

    /// A dual matrix with zero dual part.
    pub fn real(std: RealMatrix) -> Self {
        let dual = RealMatrix::zeros(std.rows(), std.cols());
        Self { std, dual }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::real(RealMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Self::real(RealMatrix::identity(n))
    }

    pub fn from_rows<R: AsRef<[i64]>>(std: &[R], dual: &[R]) -> Result<Self> {
        Self::new(RealMatrix::from_rows(std)?, RealMatrix::from_rows(dual)?)
    }

    pub fn std(&self) -> &RealMatrix {
        &self.std
    }

    pub fn dual(&self) -> &RealMatrix {
        &self.dual
    }

    pub fn into_parts(self) -> (RealMatrix, RealMatrix) {
        (self.std, self.dual)
    }

    pub fn shape(&self) -> (usize, usize) {
        self.std.shape()
    }

    pub fn is_square(&self) -> bool {
        self.std.is_square()
    }

    pub fn is_zero(&self) -> bool {
        self.std.is_zero() && self.dual.is_zero()
    }

    pub fn transpose(&self) -> Self {
        Self {
            std: self.std.transpose(),
            dual: self.dual.transpose(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            std: self.std.try_add(&other.std)?,
            dual: self.dual.try_add(&other.dual)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            std: self.std.try_sub(&other.std)?,
            dual: self.dual.try_sub(&other.dual)?,
        })
    }

    /// `(A + eps A0)(B + eps B0) = AB + eps (A B0 + A0 B)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let std = self.std.try_mul(&other.std)?;
        let dual = self
            .std
            .try_mul(&other.dual)?
            .try_add(&self.dual.try_mul(&other.std)?)?;
        Ok(Self { std, dual })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            std: self.std.scale(s),
            dual: self.dual.scale(s),
        }
    }
}

impl Add for &DualMatrix {
    type Output = DualMatrix;

    fn add(self, rhs: Self) -> DualMatrix {
        self.try_add(rhs).expect("dual matrix addition shape mismatch")
    }
}

impl Sub for &DualMatrix {
    type Output = DualMatrix;

    fn sub(self, rhs: Self) -> DualMatrix {
        self.try_sub(rhs).expect("dual matrix subtraction shape mismatch")
    }
}

impl Mul for &DualMatrix {
    type Output = DualMatrix;

    fn mul(self, rhs: Self) -> DualMatrix {
        self.try_mul(rhs).expect("dual matrix multiplication shape mismatch")
    }
}

impl Neg for &DualMatrix {
    type Output = DualMatrix;

    fn neg(self) -> DualMatrix {
        DualMatrix {
            std: -&self.std,
            dual: -&self.dual,
        }
    }
}

impl fmt::Display for DualMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + eps {}", self.std, self.dual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(std: &[&[i64]], dual: &[&[i64]]) -> DualMatrix {
        DualMatrix::from_rows(std, dual).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let b = d(&[&[1, 2], &[3, 4]], &[&[5, 6], &[7, 8]]);
        assert_eq!(&DualMatrix::identity(2) * &b, b);
        assert_eq!(&b * &DualMatrix::identity(2), b);
    }

    #[test]
    fn pure_dual_parts_annihilate() {
        let a = d(&[&[0, 0], &[0, 0]], &[&[1, 2], &[3, 4]]);
        let b = d(&[&[0, 0], &[0, 0]], &[&[4, 3], &[2, 1]]);
        assert!((&a * &b).is_zero());
    }

    #[test]
    fn product_has_first_order_cross_terms() {
        let a = d(&[&[1, 1]], &[&[0, 2]]);
        let b = d(&[&[1], &[2]], &[&[3], &[0]]);
        // AB = 3, A B0 + A0 B = 3 + 4
        assert_eq!(&a * &b, d(&[&[3]], &[&[7]]));
    }

    #[test]
    fn difference_of_first_example_pair() {
        let e = d(
            &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]],
            &[&[1, 1, 1], &[1, 0, 0], &[1, 0, 0]],
        );
        let f = d(
            &[&[2, 1, 0], &[1, 1, 0], &[0, 0, 0]],
            &[&[4, 3, 2], &[3, 1, 1], &[2, 1, 0]],
        );
        let diff = &f - &e;
        assert_eq!(
            diff,
            d(
                &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]],
                &[&[3, 2, 1], &[2, 1, 1], &[1, 1, 0]],
            )
        );
    }

    #[test]
    fn transpose_and_shape_errors() {
        let a = d(&[&[1, 2]], &[&[3, 4]]);
        assert_eq!(a.transpose(), d(&[&[1], &[2]], &[&[3], &[4]]));
        assert!(matches!(a.try_mul(&a), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(
            DualMatrix::new(RealMatrix::zeros(1, 2), RealMatrix::zeros(2, 1)),
            Err(Error::ShapeMismatch { .. })
        ));
    }
}
