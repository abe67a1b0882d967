use rand::Rng;

use super::sample::{self, repair_dmpgi, repair_index_one};
use super::Trial;
use crate::canonical::{
    block_shape, build_pair, default_style, draw_matrix, perturb_pair, perturbable_blocks, sample_shape,
    FactorStyle, GeneratedPair, GeneratorParams,
};
use crate::dual::DualMatrix;
use crate::error::Error;
use crate::orders::{characterization_routes, OrderKind};

/// A theorem stating that two characterizations of an order agree, given
/// as the order and the names of the two routes compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Biconditional {
    DualMinusDualRank,
    DualMinusBlockMinus,
    DStarOverDualMinus,
    PStarOverDualMinus,
    DSharpOverDualMinus,
    GSharpOverDualMinus,
    DMSharpOverDualMinus,
    DSharpOverDMSharp,
    GSharpOverDMSharp,
    DMStarOverDualMinus,
    DStarOverDMStar,
    PStarOverDMStar,
}

impl Biconditional {
    pub const ALL: [Biconditional; 12] = [
        Biconditional::DualMinusDualRank,
        Biconditional::DualMinusBlockMinus,
        Biconditional::DStarOverDualMinus,
        Biconditional::PStarOverDualMinus,
        Biconditional::DSharpOverDualMinus,
        Biconditional::GSharpOverDualMinus,
        Biconditional::DMSharpOverDualMinus,
        Biconditional::DSharpOverDMSharp,
        Biconditional::GSharpOverDMSharp,
        Biconditional::DMStarOverDualMinus,
        Biconditional::DStarOverDMStar,
        Biconditional::PStarOverDMStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Biconditional::DualMinusDualRank => "dual-minus/dual-rank",
            Biconditional::DualMinusBlockMinus => "dual-minus/block-minus",
            Biconditional::DStarOverDualMinus => "d-star/dual-minus",
            Biconditional::PStarOverDualMinus => "p-star/dual-minus",
            Biconditional::DSharpOverDualMinus => "d-sharp/dual-minus",
            Biconditional::GSharpOverDualMinus => "g-sharp/dual-minus",
            Biconditional::DMSharpOverDualMinus => "dm-sharp/dual-minus",
            Biconditional::DSharpOverDMSharp => "d-sharp/dm-sharp",
            Biconditional::GSharpOverDMSharp => "g-sharp/dm-sharp",
            Biconditional::DMStarOverDualMinus => "dm-star/dual-minus",
            Biconditional::DStarOverDMStar => "d-star/dm-star",
            Biconditional::PStarOverDMStar => "p-star/dm-star",
        }
    }

    /// The order and its two compared routes.
    pub fn routes(self) -> (OrderKind, &'static str, &'static str) {
        use OrderKind::*;
        match self {
            Biconditional::DualMinusDualRank => (DualMinus, "definition", "dual-rank-subtractivity"),
            Biconditional::DualMinusBlockMinus => (DualMinus, "definition", "block-minus"),
            Biconditional::DStarOverDualMinus => (DStar, "dual-transpose", "dual-minus-with-coupling"),
            Biconditional::PStarOverDualMinus => (PStar, "split-equations", "dual-minus-with-annihilation"),
            Biconditional::DSharpOverDualMinus => (DSharp, "split-equations", "dual-minus-with-coupling"),
            Biconditional::GSharpOverDualMinus => (GSharp, "split-equations", "dual-minus-with-annihilation"),
            Biconditional::DMSharpOverDualMinus => (DMSharp, "definition", "dual-minus-with-commuting"),
            Biconditional::DSharpOverDMSharp => (DSharp, "split-equations", "dm-sharp-with-coupling"),
            Biconditional::GSharpOverDMSharp => (GSharp, "split-equations", "dm-sharp-with-annihilation"),
            Biconditional::DMStarOverDualMinus => (DMStar, "definition", "dual-minus-with-symmetry"),
            Biconditional::DStarOverDMStar => (DStar, "dual-transpose", "dm-star-with-coupling"),
            Biconditional::PStarOverDMStar => (PStar, "split-equations", "dm-star-with-annihilation"),
        }
    }

    /// The weaker order whose canonical pairs feed the second population.
    /// `None` stands for minus-related standard parts with free dual parts.
    fn base(self) -> Option<OrderKind> {
        match self {
            Biconditional::DualMinusDualRank | Biconditional::DualMinusBlockMinus => None,
            Biconditional::DSharpOverDMSharp | Biconditional::GSharpOverDMSharp => Some(OrderKind::DMSharp),
            Biconditional::DStarOverDMStar | Biconditional::PStarOverDMStar => Some(OrderKind::DMStar),
            _ => Some(OrderKind::DualMinus),
        }
    }
}

const MAX_DIM: usize = 6;

/// How a population is judged.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Expect {
    /// Both routes must hold.
    Related,
    /// The routes must agree whenever the order is defined.
    Agree,
}

fn compare(b: Biconditional, t: &mut Trial, population: &str, e: &DualMatrix, f: &DualMatrix, expect: Expect) {
    let (kind, lhs, rhs) = b.routes();
    let routes = match characterization_routes(kind, e, f) {
        Ok(r) => r,
        Err(Error::PreconditionUnmet(_)) if expect == Expect::Agree => return,
        Err(err) => return t.fail(&[e, f], format!("{population}: {err}")),
    };
    let verdict = |name: &str| routes.iter().find(|r| r.name == name).map(|r| r.verdict);
    let (Some(l), Some(r)) = (verdict(lhs), verdict(rhs)) else {
        return t.fail(&[e, f], format!("{population}: {kind} has no route {lhs} or {rhs}"));
    };
    if l != r || (expect == Expect::Related && !l) {
        t.fail(&[e, f], format!("{population}: {lhs} = {l}, {rhs} = {r}"));
    }
}

/// Canonical pair of `kind`; index-one orders and minus-type bases feeding
/// them use similarity factors.
fn generated(kind: OrderKind, needs_index_one: bool, seed: u64) -> crate::error::Result<GeneratedPair> {
    let (rows, cols, ranks) = sample_shape(if needs_index_one { OrderKind::DMSharp } else { kind }, MAX_DIM, 2, seed)?;
    let style = if needs_index_one {
        FactorStyle::Similarity
    } else {
        default_style(kind, rows, cols, seed)
    };
    let params = GeneratorParams::random_with_style(kind, rows, cols, ranks[0], ranks[1], style, seed)?;
    build_pair(kind, &params)
}

/// Minus-related standard parts with dual parts chosen so that the order's
/// precondition holds and the difference sometimes has a DMPGI.
fn minus_base(t: &mut Trial, needs_index_one: bool) -> Option<(DualMatrix, DualMatrix)> {
    let seed = t.seed() ^ 0x0b5e;
    let pair = t.check(&[], "minus base", generated(OrderKind::Minus, needs_index_one, seed))?;
    let mut rng = sample::rng(seed);
    let (rows, cols) = pair.e.shape();
    let repair = |m: crate::kernel::RealMatrix, d: &crate::kernel::RealMatrix| {
        if needs_index_one {
            repair_index_one(m, d)
        } else {
            Some(repair_dmpgi(m, d))
        }
    };
    let e = repair(pair.e.std().clone(), &draw_matrix(&mut rng, rows, cols))?;
    let f = if rng.random_bool(0.5) {
        let diff = repair_dmpgi(pair.f.std() - pair.e.std(), &draw_matrix(&mut rng, rows, cols));
        DualMatrix::new(pair.f.std().clone(), e.dual() + diff.dual()).expect("shapes match")
    } else {
        repair(pair.f.std().clone(), &draw_matrix(&mut rng, rows, cols))?
    };
    Some((e, f))
}

pub(super) fn trial(b: Biconditional, t: &mut Trial) {
    let (kind, _, _) = b.routes();
    let index_one = kind.needs_index_one();
    let seed = t.seed();

    let Some(pair) = t.check(&[], "in-order generation", generated(kind, index_one, seed)) else {
        return;
    };
    compare(b, t, "in-order", &pair.e, &pair.f, Expect::Related);

    match b.base() {
        Some(base) => {
            if let Some(p) = t.check(&[], "base generation", generated(base, index_one, seed ^ 0xba5e)) {
                compare(b, t, "base", &p.e, &p.f, Expect::Agree);
            }
        }
        None => {
            if let Some((e, f)) = minus_base(t, index_one) {
                compare(b, t, "base", &e, &f, Expect::Agree);
            }
        }
    }

    let (e, f) = sample::random_pair(kind, seed ^ 0x7a4d, MAX_DIM);
    compare(b, t, "random", &e, &f, Expect::Agree);

    let mut rng = sample::rng(seed ^ 0x9e27);
    let blocks: Vec<_> = perturbable_blocks(kind)
        .into_iter()
        .filter(|&bl| {
            let (h, w) = block_shape(&pair, bl);
            h > 0 && w > 0
        })
        .collect();
    if !blocks.is_empty() {
        let block = blocks[rng.random_range(0..blocks.len())];
        let (h, w) = block_shape(&pair, block);
        let delta = draw_matrix(&mut rng, h, w);
        if let Some(moved) = t.check(&[&pair.e, &pair.f], "perturbation", perturb_pair(&pair, block, &delta)) {
            compare(b, t, "perturbed", &moved.e, &moved.f, Expect::Agree);
        }
    }
}
