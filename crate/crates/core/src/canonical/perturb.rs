use std::fmt;

use super::GeneratedPair;
use crate::dual::DualMatrix;
use crate::error::{Error, Result};
use crate::kernel::RealMatrix;
use crate::orders::OrderKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Std,
    Dual,
}

/// A block of `F` in the 3x3 canonical partition, with 1-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BlockRef {
    pub part: Part,
    pub row: usize,
    pub col: usize,
}

impl BlockRef {
    pub const fn std(row: usize, col: usize) -> Self {
        Self { part: Part::Std, row, col }
    }

    pub const fn dual(row: usize, col: usize) -> Self {
        Self { part: Part::Dual, row, col }
    }
}

impl fmt::Display for BlockRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = match self.part {
            Part::Std => "std",
            Part::Dual => "dual",
        };
        write!(f, "F {part} ({},{})", self.row, self.col)
    }
}

/// Blocks of `F` whose value the canonical form of `kind` pins down in terms
/// of the other blocks, so that shifting one breaks the relation.
///
/// The dual (3,3) block is left out: moving it away from zero breaks the
/// precondition on `F` rather than the order itself.
pub fn perturbable_blocks(kind: OrderKind) -> Vec<BlockRef> {
    let dual_minus = [BlockRef::dual(1, 1), BlockRef::dual(1, 3), BlockRef::dual(3, 1)];
    let off_diagonal = [BlockRef::std(1, 2), BlockRef::std(2, 1)];
    let coupled = [BlockRef::dual(1, 2), BlockRef::dual(2, 1)];
    match kind {
        OrderKind::Minus => vec![BlockRef::std(1, 1)],
        OrderKind::Star | OrderKind::Sharp => off_diagonal.to_vec(),
        OrderKind::DualMinus => [&dual_minus[..], &[BlockRef::std(1, 1)]].concat(),
        OrderKind::DMSharp | OrderKind::DMStar => [&dual_minus[..], &off_diagonal[..]].concat(),
        OrderKind::DStar | OrderKind::PStar | OrderKind::DSharp | OrderKind::GSharp => {
            [&dual_minus[..], &coupled[..], &off_diagonal[..]].concat()
        }
    }
}

fn block_sizes(rows: usize, r_e: usize, r_f: usize) -> [usize; 3] {
    [r_e, r_f - r_e, rows - r_f]
}

/// Shape of a block of the pair's partition.
pub fn block_shape(pair: &GeneratedPair, block: BlockRef) -> (usize, usize) {
    let (rows, cols) = pair.f.shape();
    (
        block_sizes(rows, pair.r_e, pair.r_f)[block.row - 1],
        block_sizes(cols, pair.r_e, pair.r_f)[block.col - 1],
    )
}

/// Shifts one constrained block of `F` (in canonical coordinates) by `delta`.
pub fn perturb_pair(pair: &GeneratedPair, block: BlockRef, delta: &RealMatrix) -> Result<GeneratedPair> {
    if !(1..=3).contains(&block.row) || !(1..=3).contains(&block.col) {
        return Err(Error::InvalidParams(format!("block indices of {block} must be in 1..=3")));
    }
    if !perturbable_blocks(pair.kind).contains(&block) {
        return Err(Error::BlockNotPerturbable(block.to_string(), "it is a free parameter of the form"));
    }
    let (h, w) = block_shape(pair, block);
    if h == 0 || w == 0 {
        return Err(Error::BlockNotPerturbable(block.to_string(), "it is empty for these ranks"));
    }
    if delta.shape() != (h, w) {
        return Err(Error::ShapeMismatch {
            op: "perturb_pair",
            left: delta.shape(),
            right: (h, w),
        });
    }
    let (rows, cols) = pair.f.shape();
    let offset = |sizes: [usize; 3], i: usize| sizes[..i - 1].iter().sum::<usize>();
    let row0 = offset(block_sizes(rows, pair.r_e, pair.r_f), block.row);
    let col0 = offset(block_sizes(cols, pair.r_e, pair.r_f), block.col);

    let target = match block.part {
        Part::Std => pair.f.std(),
        Part::Dual => pair.f.dual(),
    };
    let mut coords = pair.factors.unapply(target);
    let shifted = &coords.block(row0, col0, h, w) + delta;
    coords.set_block(row0, col0, &shifted);
    let moved = pair.factors.apply(&coords);
    let f = match block.part {
        Part::Std => DualMatrix::new(moved, pair.f.dual().clone())?,
        Part::Dual => DualMatrix::new(pair.f.std().clone(), moved)?,
    };
    Ok(GeneratedPair { f, ..pair.clone() })
}
