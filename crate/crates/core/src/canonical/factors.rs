use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::{int, inverse, RealMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorStyle {
    /// `X -> U X V^T` with `U`, `V` orthogonal.
    Orthogonal,
    /// `X -> P X P^-1`.
    Similarity,
}

/// The outer factors of a canonical form: `(U, V)` in the orthogonal case,
/// `(P, P^-1)` in the similarity case.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FactorPair {
    pub style: FactorStyle,
    pub left: RealMatrix,
    pub right: RealMatrix,
}

impl FactorPair {
    pub fn identity(rows: usize, cols: usize, style: FactorStyle) -> Self {
        Self {
            style,
            left: RealMatrix::identity(rows),
            right: RealMatrix::identity(cols),
        }
    }

    /// Maps a matrix out of canonical coordinates.
    pub fn apply(&self, x: &RealMatrix) -> RealMatrix {
        match self.style {
            FactorStyle::Orthogonal => &(&self.left * x) * &self.right.transpose(),
            FactorStyle::Similarity => &(&self.left * x) * &self.right,
        }
    }

    /// Maps a matrix back into canonical coordinates.
    pub fn unapply(&self, x: &RealMatrix) -> RealMatrix {
        match self.style {
            FactorStyle::Orthogonal => &(&self.left.transpose() * x) * &self.right,
            FactorStyle::Similarity => &(&self.right * x) * &self.left,
        }
    }

    /// `U U^T = I = V V^T`, or `P P^-1 = I`, exactly.
    pub fn is_exact(&self) -> bool {
        match self.style {
            FactorStyle::Orthogonal => [&self.left, &self.right]
                .iter()
                .all(|q| &(*q * &q.transpose()) == &RealMatrix::identity(q.rows())),
            FactorStyle::Similarity => {
                &self.left * &self.right == RealMatrix::identity(self.left.rows())
            }
        }
    }
}

/// Cayley transform `(I - S)(I + S)^-1 J` of a skew-symmetric `S`, with `J`
/// a diagonal of signs.
pub fn cayley(skew: &RealMatrix, signs: &[bool]) -> Result<RealMatrix> {
    let n = skew.rows();
    if !skew.is_square() || signs.len() != n {
        return Err(Error::ShapeMismatch {
            op: "cayley",
            left: skew.shape(),
            right: (signs.len(), signs.len()),
        });
    }
    if skew.transpose() != -skew {
        return Err(Error::InvalidParams("Cayley transform needs a skew-symmetric matrix".into()));
    }
    let id = RealMatrix::identity(n);
    let j = RealMatrix::diagonal(&signs.iter().map(|&neg| int(if neg { -1 } else { 1 })).collect::<Vec<_>>());
    Ok(&(&(&id - skew) * &inverse(&(&id + skew))?) * &j)
}

pub(crate) fn draw_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> RealMatrix {
    let mut s = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = int(rng.random_range(-2..=2));
            s[(j, i)] = -&v;
            s[(i, j)] = v;
        }
    }
    let signs: Vec<bool> = (0..n).map(|_| rng.random_bool(0.5)).collect();
    cayley(&s, &signs).expect("I + S is invertible for skew-symmetric S")
}

pub(crate) fn draw_nonsingular(rng: &mut ChaCha8Rng, n: usize) -> FactorPair {
    loop {
        let p = RealMatrix::from_fn(n, n, |_, _| int(rng.random_range(-3..=3)));
        if let Ok(p_inv) = inverse(&p) {
            return FactorPair {
                style: FactorStyle::Similarity,
                left: p,
                right: p_inv,
            };
        }
    }
}

/// Seeded random rational orthogonal `n x n` matrix.
pub fn gen_orthogonal(n: usize, seed: u64) -> RealMatrix {
    draw_orthogonal(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

/// Seeded random integer matrix `P` and its inverse.
pub fn gen_nonsingular(n: usize, seed: u64) -> FactorPair {
    draw_nonsingular(&mut ChaCha8Rng::seed_from_u64(seed), n)
}
