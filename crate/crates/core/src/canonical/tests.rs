use super::*;
use crate::orders::check_order;

fn related(kind: OrderKind, e: &crate::dual::DualMatrix, f: &crate::dual::DualMatrix) -> bool {
    check_order(kind, e, f).unwrap().verdict
}

#[test]
fn every_kind_generates_related_pairs() {
    for kind in OrderKind::ALL {
        for seed in 0..6 {
            let params = GeneratorParams::sample(kind, 4, seed).unwrap();
            let pair = gen_pair(kind, &params).unwrap_or_else(|e| panic!("{kind} seed {seed}: {e}"));
            assert!(pair.factors.is_exact());
            assert_eq!(crate::kernel::rank(pair.e.std()), params.r_e);
            assert_eq!(crate::kernel::rank(pair.f.std()), params.r_f);
        }
    }
}

#[test]
fn generation_is_deterministic() {
    let a = GeneratorParams::sample(OrderKind::DSharp, 5, 11).unwrap();
    let b = GeneratorParams::sample(OrderKind::DSharp, 5, 11).unwrap();
    assert_eq!(a, b);
    assert_eq!(build_pair(OrderKind::DSharp, &a).unwrap(), build_pair(OrderKind::DSharp, &b).unwrap());
}

#[test]
fn real_kinds_have_zero_dual_parts() {
    for kind in [OrderKind::Minus, OrderKind::Star, OrderKind::Sharp] {
        let pair = gen_pair(kind, &GeneratorParams::random(kind, 4, 4, 1, 3, 5).unwrap()).unwrap();
        assert!(pair.e.dual().is_zero() && pair.f.dual().is_zero());
    }
}

#[test]
fn equal_ranks_give_equal_matrices() {
    let params = GeneratorParams::random(OrderKind::DMSharp, 4, 4, 2, 2, 3).unwrap();
    let pair = gen_pair(OrderKind::DMSharp, &params).unwrap();
    assert_eq!(pair.e, pair.f);
    let chain = gen_chain(OrderKind::DualMinus, &ChainParams::random(OrderKind::DualMinus, 3, 4, [2, 2, 2], 9).unwrap()).unwrap();
    assert_eq!(chain.e, chain.f);
    assert_eq!(chain.f, chain.g);
}

#[test]
fn dm_sharp_chain_with_ranks_one_two_three() {
    let params = ChainParams::random(OrderKind::DMSharp, 4, 4, [1, 2, 3], 21).unwrap();
    let c = build_chain(OrderKind::DMSharp, &params).unwrap();
    assert!(related(OrderKind::DMSharp, &c.e, &c.f));
    assert!(related(OrderKind::DMSharp, &c.f, &c.g));
    assert!(related(OrderKind::DMSharp, &c.e, &c.g));
}

#[test]
fn dm_star_chain_without_dual_parts_is_a_star_chain() {
    let mut params = ChainParams::random(OrderKind::DMStar, 4, 5, [1, 2, 4], 2).unwrap();
    for b in [&mut params.base.e1, &mut params.base.e2, &mut params.base.e3, &mut params.base.e4, &mut params.base.e7] {
        *b = RealMatrix::zeros(b.rows(), b.cols());
    }
    for step in [&mut params.first, &mut params.second] {
        for b in [&mut step.m, &mut step.n, &mut step.f5, &mut step.f6, &mut step.f8] {
            *b = RealMatrix::zeros(b.rows(), b.cols());
        }
    }
    let c = gen_chain(OrderKind::DMStar, &params).unwrap();
    assert!(c.e.dual().is_zero() && c.g.dual().is_zero());
    assert!(related(OrderKind::Star, &c.e, &c.g));
}

fn specialized(target: OrderKind, seed: u64) -> GeneratorParams {
    let mut p = GeneratorParams::random(target, 5, 5, 2, 4, seed).unwrap();
    p.step = specialize(target, &p.base.d1, &p.base.e2, &p.base.e4, &p.step).unwrap();
    if target.needs_index_one() {
        assert_eq!(p.factors.style, FactorStyle::Similarity);
    }
    p
}

#[test]
fn dual_minus_specializations_reach_the_stronger_orders() {
    for target in [OrderKind::PStar, OrderKind::DStar, OrderKind::DSharp, OrderKind::GSharp] {
        for seed in 0..3 {
            let p = specialized(target, seed);
            let pair = gen_pair(OrderKind::DualMinus, &p).unwrap();
            assert!(related(target, &pair.e, &pair.f), "{target} seed {seed}");
        }
    }
}

#[test]
fn d_star_coupling_needs_symmetric_d1() {
    let mut p = GeneratorParams::random(OrderKind::DualMinus, 3, 3, 1, 2, 4).unwrap();
    p.factors = FactorPair::identity(3, 3, FactorStyle::Orthogonal);
    p.base.d1 = RealMatrix::from_rows(&[[2]]).unwrap();
    p.step = specialize(OrderKind::DStar, &p.base.d1, &p.base.e2, &p.base.e4, &p.step).unwrap();
    let pair = gen_pair(OrderKind::DualMinus, &p).unwrap();
    assert!(related(OrderKind::DStar, &pair.e, &pair.f));

    let mut p = GeneratorParams::random(OrderKind::DualMinus, 4, 4, 2, 3, 4).unwrap();
    p.base.d1 = RealMatrix::from_rows(&[[1, 2], [0, 1]]).unwrap();
    assert!(matches!(
        specialize(OrderKind::DStar, &p.base.d1, &p.base.e2, &p.base.e4, &p.step),
        Err(Error::InvalidParams(_))
    ));
    // with D1^-T in place of D1^-1 the coupling works for any D1
    let d1_inv_t = inverse(&p.base.d1).unwrap().transpose();
    let mut step = p.step.clone();
    step.r = RealMatrix::zeros(2, 1);
    step.s = RealMatrix::zeros(1, 2);
    step.m = -&(&(&step.d2 * &p.base.e2.transpose()) * &d1_inv_t);
    step.n = -&(&(&d1_inv_t * &p.base.e4.transpose()) * &step.d2);
    p.step = step;
    p.factors = FactorPair::identity(4, 4, FactorStyle::Orthogonal);
    let pair = gen_pair(OrderKind::DualMinus, &p).unwrap();
    assert!(related(OrderKind::DStar, &pair.e, &pair.f));
}

#[test]
fn singular_blocks_are_rejected() {
    let mut p = GeneratorParams::random(OrderKind::DualMinus, 3, 3, 1, 2, 0).unwrap();
    p.step.d2 = RealMatrix::zeros(1, 1);
    assert_eq!(build_pair(OrderKind::DualMinus, &p), Err(Error::NonInvertibleBlock("D2")));
    p.base.d1 = RealMatrix::zeros(1, 1);
    assert_eq!(build_pair(OrderKind::DualMinus, &p), Err(Error::NonInvertibleBlock("D1")));
}

#[test]
fn shape_and_style_errors() {
    assert!(matches!(
        GeneratorParams::random(OrderKind::Sharp, 3, 4, 1, 2, 0),
        Err(Error::InvalidParams(_))
    ));
    assert!(matches!(
        GeneratorParams::random(OrderKind::Minus, 3, 4, 2, 1, 0),
        Err(Error::InvalidParams(_))
    ));
    let mut p = GeneratorParams::random(OrderKind::DualMinus, 3, 3, 1, 2, 0).unwrap();
    p.step.r = RealMatrix::zeros(2, 2);
    assert!(matches!(build_pair(OrderKind::DualMinus, &p), Err(Error::ShapeMismatch { .. })));
}

#[test]
fn perturbing_a_constrained_block_breaks_dual_minus() {
    let p = GeneratorParams::random(OrderKind::DualMinus, 4, 4, 1, 2, 8).unwrap();
    let pair = gen_pair(OrderKind::DualMinus, &p).unwrap();
    let block = BlockRef::dual(1, 3);
    let (h, w) = block_shape(&pair, block);
    let delta = RealMatrix::from_fn(h, w, |_, j| crate::kernel::int(j as i64 + 1));
    let moved = perturb_pair(&pair, block, &delta).unwrap();
    assert!(!related(OrderKind::DualMinus, &moved.e, &moved.f));

    let same = perturb_pair(&pair, block, &RealMatrix::zeros(h, w)).unwrap();
    assert_eq!(same, pair);
}

#[test]
fn perturbing_std_part_breaks_dm_sharp() {
    let p = GeneratorParams::random(OrderKind::DMSharp, 4, 4, 1, 3, 8).unwrap();
    let pair = gen_pair(OrderKind::DMSharp, &p).unwrap();
    let delta = RealMatrix::from_fn(1, 2, |_, _| crate::kernel::int(1));
    let moved = perturb_pair(&pair, BlockRef::std(1, 2), &delta).unwrap();
    assert!(!related(OrderKind::DMSharp, &moved.e, &moved.f));
}

#[test]
fn free_and_empty_blocks_cannot_be_perturbed() {
    let p = GeneratorParams::random(OrderKind::DualMinus, 3, 3, 0, 2, 1).unwrap();
    let pair = gen_pair(OrderKind::DualMinus, &p).unwrap();
    assert!(matches!(
        perturb_pair(&pair, BlockRef::dual(2, 2), &RealMatrix::zeros(2, 2)),
        Err(Error::BlockNotPerturbable(..))
    ));
    assert!(matches!(
        perturb_pair(&pair, BlockRef::dual(1, 3), &RealMatrix::zeros(0, 1)),
        Err(Error::BlockNotPerturbable(..))
    ));
}
