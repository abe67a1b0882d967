use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::integer::scaled;
use super::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RealMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                op: "new",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from integer rows. An empty slice gives a 0x0 matrix.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    op: "from_rows",
                    left: (1, cols),
                    right: (1, row.len()),
                });
            }
            data.extend(row.iter().map(|&v| Rational::from_integer(v.into())));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { values[i].clone() } else { Rational::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "subtract", |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "multiply",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let left: Vec<_> = (0..self.rows).map(|i| scaled(self.row(i).iter())).collect();
        let right: Vec<_> = (0..other.cols)
            .map(|j| scaled((0..other.rows).map(|k| &other.data[k * other.cols + j])))
            .collect();
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for (a, da) in &left {
            for (b, db) in &right {
                let mut sum = BigInt::zero();
                for (x, y) in a.iter().zip(b) {
                    if !x.is_zero() && !y.is_zero() {
                        sum += x * y;
                    }
                }
                data.push(if sum.is_zero() {
                    Rational::zero()
                } else {
                    Rational::new(sum, da * db)
                });
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self^k` for square matrices; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                op: "pow",
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Copies the `height x width` block whose top-left corner is `(row, col)`.
    pub fn block(&self, row: usize, col: usize, height: usize, width: usize) -> Self {
        assert!(row + height <= self.rows && col + width <= self.cols, "block out of range");
        Self::from_fn(height, width, |i, j| self[(row + i, col + j)].clone())
    }

    /// Overwrites the block at `(row, col)` with `block`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &Self) {
        assert!(
            row + block.rows <= self.rows && col + block.cols <= self.cols,
            "block out of range"
        );
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(row + i, col + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Assembles a block matrix. Every block in a block-row must share its
    /// height and every block in a block-column its width; zero-sized blocks
    /// are allowed and still have to agree.
    pub fn compose(grid: &[Vec<&Self>]) -> Result<Self> {
        let Some(first) = grid.first() else {
            return Ok(Self::zeros(0, 0));
        };
        let widths: Vec<usize> = first.iter().map(|b| b.cols).collect();
        let mut heights = Vec::with_capacity(grid.len());
        for block_row in grid {
            if block_row.len() != widths.len() {
                return Err(Error::ShapeMismatch {
                    op: "compose",
                    left: (grid.len(), widths.len()),
                    right: (grid.len(), block_row.len()),
                });
            }
            let h = block_row[0].rows;
            for (b, &w) in block_row.iter().zip(&widths) {
                if b.rows != h || b.cols != w {
                    return Err(Error::ShapeMismatch {
                        op: "compose",
                        left: (h, w),
                        right: b.shape(),
                    });
                }
            }
            heights.push(h);
        }
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r = 0;
        for (block_row, h) in grid.iter().zip(&heights) {
            let mut c = 0;
            for (b, w) in block_row.iter().zip(&widths) {
                out.set_block(r, c, b);
                c += w;
            }
            r += h;
        }
        Ok(out)
    }

    /// The `[[A, B], [C, D]]` layout.
    pub fn compose2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        Self::compose(&[vec![a, b], vec![c, d]])
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Keeps the first `count` rows.
    pub fn leading_rows(&self, count: usize) -> Self {
        self.block(0, 0, count, self.cols)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RealMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; the `try_*` methods report it.

impl Add for &RealMatrix {
    type Output = RealMatrix;

    fn add(self, rhs: &RealMatrix) -> RealMatrix {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &RealMatrix {
    type Output = RealMatrix;

    fn sub(self, rhs: &RealMatrix) -> RealMatrix {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &RealMatrix {
    type Output = RealMatrix;

    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &RealMatrix {
    type Output = RealMatrix;

    fn neg(self) -> RealMatrix {
        RealMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| -v).collect(),
        }
    }
}

impl fmt::Display for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Entries serialize as JSON integers when they are integral and fit in
/// `i64`, and as `"p/q"` strings otherwise.
impl serde::Serialize for RealMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for row in self.row_iter() {
            let row: Vec<Entry<'_>> = row.iter().map(Entry).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

struct Entry<'a>(&'a Rational);

impl serde::Serialize for Entry<'_> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        match self.0.is_integer().then(|| self.0.numer().to_i64()).flatten() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.collect_str(self.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    fn m(rows: &[&[i64]]) -> RealMatrix {
        RealMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn transpose_swaps_indices() {
        assert_eq!(m(&[&[1, 2], &[3, 4]]).transpose(), m(&[&[1, 3], &[2, 4]]));
    }

    #[test]
    fn multiply_by_hand() {
        let a = m(&[&[1, 1], &[0, 0]]);
        let b = m(&[&[1], &[1]]);
        assert_eq!(&a * &b, m(&[&[2], &[0]]));
    }

    #[test]
    fn transpose_reverses_products() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6]]);
        let b = m(&[&[1, 0], &[2, -1], &[0, 7]]);
        assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn compose_places_blocks() {
        let e = m(&[&[2]]);
        let e0 = m(&[&[5]]);
        let o = RealMatrix::zeros(1, 1);
        assert_eq!(RealMatrix::compose2(&e0, &e, &e, &o).unwrap(), m(&[&[5, 2], &[2, 0]]));
    }

    #[test]
    fn compose_three_by_three_with_empty_blocks() {
        let d = m(&[&[7]]);
        let z = |r, c| RealMatrix::zeros(r, c);
        let (z10, z01, z00) = (z(1, 0), z(0, 1), z(0, 0));
        let (z12, z21, z02, z20) = (z(1, 2), z(2, 1), z(0, 2), z(2, 0));
        let z22 = z(2, 2);
        let out = RealMatrix::compose(&[
            vec![&d, &z10, &z12],
            vec![&z01, &z00, &z02],
            vec![&z21, &z20, &z22],
        ])
        .unwrap();
        assert_eq!(out.shape(), (3, 3));
        assert_eq!(out[(0, 0)], int(7));
        assert!(out.block(1, 0, 2, 3).is_zero());
        assert!(out.block(0, 1, 1, 2).is_zero());
    }

    #[test]
    fn compose_rejects_ragged_grid() {
        let a = RealMatrix::zeros(1, 1);
        let b = RealMatrix::zeros(2, 1);
        assert!(matches!(
            RealMatrix::compose2(&a, &b, &a, &a),
            Err(Error::ShapeMismatch { op: "compose", .. })
        ));
    }

    #[test]
    fn shape_errors() {
        let a = RealMatrix::zeros(2, 3);
        let b = RealMatrix::zeros(2, 3);
        assert!(a.try_mul(&b).is_err());
        assert!(a.try_add(&RealMatrix::zeros(3, 2)).is_err());
        assert!(RealMatrix::from_rows(&[vec![1, 2], vec![3]]).is_err());
    }

    #[test]
    fn pow_of_nilpotent() {
        let n = m(&[&[0, 1], &[0, 0]]);
        assert!(n.pow(2).unwrap().is_zero());
        assert_eq!(n.pow(0).unwrap(), RealMatrix::identity(2));
    }
}
