//! Generators that build order-related pairs and chains from block
//! canonical forms.
//!
//! Everything is assembled in canonical coordinates, where `E` is
//! `diag(D1, O, O)` under the row partition `(r_e, r_f - r_e, rest)` and the
//! matching column partition, and then mapped out through a [`FactorPair`].

mod factors;
mod forms;
mod perturb;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::{int, inverse, RealMatrix};
use crate::orders::OrderKind;

pub use factors::{cayley, gen_nonsingular, gen_orthogonal, FactorPair, FactorStyle};
pub use forms::{build_chain, build_pair, gen_chain, gen_pair, specialize, GeneratedChain, GeneratedPair};
pub use perturb::{block_shape, perturb_pair, perturbable_blocks, BlockRef, Part};
pub(crate) use factors::draw_nonsingular;


/// Blocks describing `E` in canonical coordinates: `D1` and the nonzero dual
/// blocks `[[E1, E2, E3], [E4, O, O], [E7, O, O]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseBlocks {
    pub d1: RealMatrix,
    pub e1: RealMatrix,
    pub e2: RealMatrix,
    pub e3: RealMatrix,
    pub e4: RealMatrix,
    pub e7: RealMatrix,
}

/// Blocks describing how `F` extends `E`: the new invertible block `D2`, the
/// standard-part couplings `R`, `S`, the dual couplings `M`, `N` and the
/// free dual blocks `F5`, `F6`, `F8`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepBlocks {
    pub d2: RealMatrix,
    pub r: RealMatrix,
    pub s: RealMatrix,
    pub m: RealMatrix,
    pub n: RealMatrix,
    pub f5: RealMatrix,
    pub f6: RealMatrix,
    pub f8: RealMatrix,
}

/// Everything needed to build one pair `(E, F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub rows: usize,
    pub cols: usize,
    pub r_e: usize,
    pub r_f: usize,
    pub base: BaseBlocks,
    pub step: StepBlocks,
    pub factors: FactorPair,
    pub seed: u64,
}

/// Everything needed to build a chain `E <= F <= G`. The second step extends
/// `F` viewed in the partition `(r_f, r_g - r_f, rest)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainParams {
    pub rows: usize,
    pub cols: usize,
    pub ranks: [usize; 3],
    pub base: BaseBlocks,
    pub first: StepBlocks,
    pub second: StepBlocks,
    pub factors: FactorPair,
    pub seed: u64,
}

/// Factor style used by default for a kind.
pub fn default_style(kind: OrderKind, rows: usize, cols: usize, seed: u64) -> FactorStyle {
    match kind {
        OrderKind::Sharp | OrderKind::DSharp | OrderKind::GSharp | OrderKind::DMSharp => {
            FactorStyle::Similarity
        }
        // the index-one variants of the minus-type forms use a similarity
        OrderKind::Minus | OrderKind::DualMinus if rows == cols && seed % 2 == 1 => {
            FactorStyle::Similarity
        }
        _ => FactorStyle::Orthogonal,
    }
}

pub(crate) fn check_style(kind: OrderKind, style: FactorStyle, rows: usize, cols: usize) -> Result<()> {
    let allowed = match kind {
        OrderKind::Sharp | OrderKind::DSharp | OrderKind::GSharp | OrderKind::DMSharp => {
            style == FactorStyle::Similarity
        }
        OrderKind::Minus | OrderKind::DualMinus => true,
        _ => style == FactorStyle::Orthogonal,
    };
    if !allowed {
        return Err(Error::InvalidParams(format!("{kind} forms do not use {style:?} factors")));
    }
    if style == FactorStyle::Similarity && rows != cols {
        return Err(Error::InvalidParams(format!(
            "similarity factors need a square shape, got {rows}x{cols}"
        )));
    }
    Ok(())
}

fn check_ranks(kind: OrderKind, rows: usize, cols: usize, ranks: &[usize]) -> Result<()> {
    if ranks.windows(2).any(|w| w[0] > w[1]) || ranks.last().is_some_and(|&r| r > rows.min(cols)) {
        return Err(Error::InvalidParams(format!(
            "ranks {ranks:?} must be nondecreasing and at most min({rows}, {cols})"
        )));
    }
    if kind.needs_index_one() && rows != cols {
        return Err(Error::InvalidParams(format!("{kind} needs square matrices, got {rows}x{cols}")));
    }
    Ok(())
}

pub(crate) fn draw_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| int(rng.random_range(-5..=5)))
}

/// Random invertible block, symmetric on request.
pub(crate) fn draw_invertible(rng: &mut ChaCha8Rng, n: usize, symmetric: bool) -> RealMatrix {
    loop {
        let mut d = draw_matrix(rng, n, n);
        if symmetric {
            for i in 0..n {
                for j in 0..i {
                    d[(i, j)] = d[(j, i)].clone();
                }
            }
        }
        if inverse(&d).is_ok() {
            return d;
        }
    }
}

fn draw_factors(rng: &mut ChaCha8Rng, style: FactorStyle, rows: usize, cols: usize) -> FactorPair {
    match style {
        FactorStyle::Orthogonal => FactorPair {
            style,
            left: factors::draw_orthogonal(rng, rows),
            right: factors::draw_orthogonal(rng, cols),
        },
        FactorStyle::Similarity => factors::draw_nonsingular(rng, rows),
    }
}

/// Dual blocks are only drawn for dual kinds.
fn draw_dual(rng: &mut ChaCha8Rng, kind: OrderKind, rows: usize, cols: usize) -> RealMatrix {
    if kind.is_real() {
        RealMatrix::zeros(rows, cols)
    } else {
        draw_matrix(rng, rows, cols)
    }
}

impl BaseBlocks {
    fn random(rng: &mut ChaCha8Rng, kind: OrderKind, rows: usize, cols: usize, r_e: usize, r_f: usize) -> Self {
        let k = r_f - r_e;
        BaseBlocks {
            d1: draw_invertible(rng, r_e, kind == OrderKind::DStar),
            e1: draw_dual(rng, kind, r_e, r_e),
            e2: draw_dual(rng, kind, r_e, k),
            e3: draw_dual(rng, kind, r_e, cols - r_f),
            e4: draw_dual(rng, kind, k, r_e),
            e7: draw_dual(rng, kind, rows - r_f, r_e),
        }
    }
}

impl StepBlocks {
    /// Draws every block; [`specialize`] then imposes the kind's constraints.
    fn random(rng: &mut ChaCha8Rng, kind: OrderKind, rows: usize, cols: usize, r_e: usize, r_f: usize) -> Self {
        let k = r_f - r_e;
        StepBlocks {
            d2: draw_invertible(rng, k, kind == OrderKind::DStar),
            r: draw_matrix(rng, r_e, k),
            s: draw_matrix(rng, k, r_e),
            m: draw_dual(rng, kind, k, r_e),
            n: draw_dual(rng, kind, r_e, k),
            f5: draw_dual(rng, kind, k, k),
            f6: draw_dual(rng, kind, k, cols - r_f),
            f8: draw_dual(rng, kind, rows - r_f, k),
        }
    }
}

impl GeneratorParams {
    /// Seeded random parameters for `kind` with the given shape and ranks.
    pub fn random(kind: OrderKind, rows: usize, cols: usize, r_e: usize, r_f: usize, seed: u64) -> Result<Self> {
        Self::random_with_style(kind, rows, cols, r_e, r_f, default_style(kind, rows, cols, seed), seed)
    }

    /// As [`GeneratorParams::random`] with an explicit factor style.
    pub fn random_with_style(
        kind: OrderKind,
        rows: usize,
        cols: usize,
        r_e: usize,
        r_f: usize,
        style: FactorStyle,
        seed: u64,
    ) -> Result<Self> {
        check_ranks(kind, rows, cols, &[r_e, r_f])?;
        check_style(kind, style, rows, cols)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = BaseBlocks::random(&mut rng, kind, rows, cols, r_e, r_f);
        let step = StepBlocks::random(&mut rng, kind, rows, cols, r_e, r_f);
        let factors = draw_factors(&mut rng, style, rows, cols);
        Ok(Self {
            rows,
            cols,
            r_e,
            r_f,
            base,
            step,
            factors,
            seed,
        })
    }

    /// Seeded random shape and ranks with at most `max_dim` rows and columns,
    /// then random parameters. One draw in four is an edge case where
    /// `r_e = 0`, `r_e = r_f` or `r_f = min(rows, cols)`.
    pub fn sample(kind: OrderKind, max_dim: usize, seed: u64) -> Result<Self> {
        let (rows, cols, ranks) = sample_shape(kind, max_dim, 2, seed)?;
        Self::random(kind, rows, cols, ranks[0], ranks[1], seed)
    }
}

impl ChainParams {
    pub fn random(kind: OrderKind, rows: usize, cols: usize, ranks: [usize; 3], seed: u64) -> Result<Self> {
        check_ranks(kind, rows, cols, &ranks)?;
        let style = default_style(kind, rows, cols, seed);
        check_style(kind, style, rows, cols)?;
        let [r_e, r_f, r_g] = ranks;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = BaseBlocks::random(&mut rng, kind, rows, cols, r_e, r_f);
        let first = StepBlocks::random(&mut rng, kind, rows, cols, r_e, r_f);
        let second = StepBlocks::random(&mut rng, kind, rows, cols, r_f, r_g);
        let factors = draw_factors(&mut rng, style, rows, cols);
        Ok(Self {
            rows,
            cols,
            ranks,
            base,
            first,
            second,
            factors,
            seed,
        })
    }

    pub fn sample(kind: OrderKind, max_dim: usize, seed: u64) -> Result<Self> {
        let (rows, cols, ranks) = sample_shape(kind, max_dim, 3, seed)?;
        Self::random(kind, rows, cols, [ranks[0], ranks[1], ranks[2]], seed)
    }
}

/// Seeded shape `(rows, cols)` and `levels` nondecreasing ranks.
pub fn sample_shape(kind: OrderKind, max_dim: usize, levels: usize, seed: u64) -> Result<(usize, usize, Vec<usize>)> {
    if max_dim == 0 {
        return Err(Error::InvalidParams("max_dim must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5a3b_1e00_0000);
    let rows = rng.random_range(1..=max_dim);
    let square = kind.needs_index_one() || rng.random_bool(0.5);
    let cols = if square { rows } else { rng.random_range(1..=max_dim) };
    let top = rows.min(cols);
    let mut ranks: Vec<usize> = (0..levels).map(|_| rng.random_range(0..=top)).collect();
    ranks.sort_unstable();
    if rng.random_range(0..4) == 0 {
        match rng.random_range(0..3) {
            0 => ranks[0] = 0,
            1 if levels > 1 => ranks[1] = ranks[0],
            _ => *ranks.last_mut().expect("at least one level") = top,
        }
        ranks.sort_unstable();
    }
    Ok((rows, cols, ranks))
}

#[cfg(test)]
mod tests;
