//! Trials of the claims other than the characterization theorems.

use rand::Rng;

use super::sample::{self, raw_dual, repair_dmpgi, satisfying, with_dmpgi, with_index_one};
use super::uniqueness::{dual_part_solutions, InverseSystem};
use super::{worked_examples, Trial};
use crate::canonical::{
    block_shape, build_chain, build_pair, draw_matrix, perturb_pair, perturbable_blocks, sample_shape, specialize,
    ChainParams, GeneratorParams,
};
use crate::dual::{
    dggi, dmpgi, dmpgi_existence_routes, dmpgi_exists, dual_group_failures, dual_index_one, dual_penrose_failures,
    DualMatrix,
};
use crate::error::Error;
use crate::kernel::{matrix_index, rank};
use crate::orders::{evaluate_all, implication_violations, outcome, OrderKind, Outcome};

const MAX_DIM: usize = 6;

/// Per-kind sub-seed, so that kinds within a trial draw independently.
fn kind_seed(t: &Trial, kind: OrderKind) -> u64 {
    t.seed() ^ ((kind as u64 + 1) << 56)
}

/// Expects `kind` to hold on `(e, f)`.
fn expect_related(t: &mut Trial, kind: OrderKind, e: &DualMatrix, f: &DualMatrix, what: &str) {
    match outcome(kind, e, f) {
        Ok(Outcome::Verdict(true)) => {}
        Ok(Outcome::Verdict(false)) => t.fail(&[e, f], format!("{what}: not related under {kind}")),
        Ok(Outcome::PreconditionUnmet(reason)) => t.fail(&[e, f], format!("{what}: {reason}")),
        Err(err) => t.fail(&[e, f], format!("{what}: {err}")),
    }
}

pub(super) fn existence_routes(t: &mut Trial) {
    let mut rng = sample::rng(t.seed());
    let rows = rng.random_range(1..=5);
    let cols = rng.random_range(1..=5);
    let raw = raw_dual(&mut rng, rows, cols);
    // half the inputs have the obstruction projected away, so both answers
    // occur often
    let e = if rng.random_bool(0.5) {
        let (std, dual) = raw.into_parts();
        repair_dmpgi(std, &dual)
    } else {
        raw
    };
    let r = dmpgi_existence_routes(&e);
    if !r.agree() {
        t.fail(
            &[&e],
            format!("block-rank {}, projector {}, dual-rank {}", r.block_rank, r.projector, r.dual_rank),
        );
    }
}

pub(super) fn index_one_has_dmpgi(t: &mut Trial) {
    let mut rng = sample::rng(t.seed());
    let n = rng.random_range(1..=5);
    let e = with_index_one(&mut rng, n);
    match (dual_index_one(&e), dmpgi_exists(&e)) {
        (Ok(true), Ok((true, _))) => {}
        (Ok(false), _) => t.fail(&[&e], "sampled matrix does not have dual index one"),
        (Ok(true), Ok((false, ranks))) => t.fail(&[&e], format!("dual index one but no DMPGI: {ranks:?}")),
        (Err(err), _) | (_, Err(err)) => t.fail(&[&e], err.to_string()),
    }
}

pub(super) fn canonical_soundness(t: &mut Trial) {
    for kind in OrderKind::ALL {
        let seed = kind_seed(t, kind);
        let Some(params) = t.check(&[], kind.name(), GeneratorParams::sample(kind, MAX_DIM, seed)) else {
            continue;
        };
        let Some(pair) = t.check(&[], kind.name(), build_pair(kind, &params)) else {
            continue;
        };
        if (rank(pair.e.std()), rank(pair.f.std())) != (params.r_e, params.r_f) {
            t.fail(&[&pair.e, &pair.f], format!("{kind}: ranks differ from ({}, {})", params.r_e, params.r_f));
        }
        expect_related(t, kind, &pair.e, &pair.f, "canonical pair");
    }
}

pub(super) fn canonical_specializations(t: &mut Trial) {
    for target in [OrderKind::PStar, OrderKind::DStar, OrderKind::DSharp, OrderKind::GSharp] {
        let seed = kind_seed(t, target);
        let Some((rows, cols, ranks)) = t.check(&[], target.name(), sample_shape(target, MAX_DIM, 2, seed)) else {
            continue;
        };
        let params = GeneratorParams::random(target, rows, cols, ranks[0], ranks[1], seed).and_then(|mut p| {
            p.step = specialize(target, &p.base.d1, &p.base.e2, &p.base.e4, &p.step)?;
            Ok(p)
        });
        let Some(params) = t.check(&[], target.name(), params) else {
            continue;
        };
        let Some(pair) = t.check(&[], target.name(), build_pair(OrderKind::DualMinus, &params)) else {
            continue;
        };
        expect_related(t, OrderKind::DualMinus, &pair.e, &pair.f, "specialized dual-minus pair");
        expect_related(t, target, &pair.e, &pair.f, "specialized dual-minus pair");
    }
}

/// Attempts per pair before a perturbation that keeps the order counts as a
/// failure.
const PERTURBATION_ATTEMPTS: usize = 4;

pub(super) fn canonical_perturbation(t: &mut Trial) {
    for kind in OrderKind::ALL {
        let seed = kind_seed(t, kind);
        let Some(params) = t.check(&[], kind.name(), GeneratorParams::sample(kind, MAX_DIM, seed)) else {
            continue;
        };
        let Some(pair) = t.check(&[], kind.name(), build_pair(kind, &params)) else {
            continue;
        };
        let blocks: Vec<_> = perturbable_blocks(kind)
            .into_iter()
            .filter(|&b| {
                let (h, w) = block_shape(&pair, b);
                h > 0 && w > 0
            })
            .collect();
        if blocks.is_empty() {
            continue;
        }
        let mut rng = sample::rng(seed);
        let block = blocks[rng.random_range(0..blocks.len())];
        let (h, w) = block_shape(&pair, block);
        let mut flipped = false;
        for _ in 0..PERTURBATION_ATTEMPTS {
            let delta = draw_matrix(&mut rng, h, w);
            if delta.is_zero() {
                continue;
            }
            let Some(moved) = t.check(&[&pair.e, &pair.f], kind.name(), perturb_pair(&pair, block, &delta)) else {
                break;
            };
            match outcome(kind, &moved.e, &moved.f) {
                Ok(Outcome::Verdict(true)) => {}
                Ok(_) => {
                    flipped = true;
                    break;
                }
                Err(err) => {
                    t.fail(&[&moved.e, &moved.f], format!("{kind} after shifting {block}: {err}"));
                    flipped = true;
                    break;
                }
            }
        }
        if !flipped {
            t.fail(&[&pair.e, &pair.f], format!("{kind} survives every shift of {block}"));
        }
    }
}

fn sample_dims(t: &Trial, kind: OrderKind) -> (usize, usize) {
    let (rows, cols, _) = sample_shape(kind, MAX_DIM, 1, kind_seed(t, kind)).expect("MAX_DIM is positive");
    (rows, cols)
}

pub(super) fn reflexivity(t: &mut Trial) {
    for kind in OrderKind::ALL {
        let (rows, cols) = sample_dims(t, kind);
        let x = satisfying(kind, &mut sample::rng(kind_seed(t, kind)), rows, cols);
        expect_related(t, kind, &x, &x, "reflexivity");
    }
}

pub(super) fn strict_antisymmetry(t: &mut Trial) {
    for kind in OrderKind::ALL {
        let seed = kind_seed(t, kind);
        let (rows, cols, mut ranks) = sample_shape(kind, MAX_DIM, 2, seed).expect("MAX_DIM is positive");
        if ranks[0] == ranks[1] {
            if ranks[1] > 0 {
                ranks[0] = ranks[1] - 1;
            } else {
                ranks[1] = 1;
            }
        }
        let params = GeneratorParams::random(kind, rows, cols, ranks[0], ranks[1], seed);
        let Some(pair) = t.check(&[], kind.name(), params.and_then(|p| build_pair(kind, &p))) else {
            continue;
        };
        expect_related(t, kind, &pair.e, &pair.f, "forward");
        match outcome(kind, &pair.f, &pair.e) {
            Ok(Outcome::Verdict(false)) => {}
            Ok(other) => t.fail(&[&pair.f, &pair.e], format!("{kind} backwards: {other:?}")),
            Err(err) => t.fail(&[&pair.f, &pair.e], format!("{kind} backwards: {err}")),
        }
    }
}

pub(super) fn mutual_antisymmetry(t: &mut Trial) {
    for kind in OrderKind::ALL {
        let seed = kind_seed(t, kind);
        let mut probes = vec![sample::random_pair(kind, seed, MAX_DIM)];
        if let Ok(p) = GeneratorParams::sample(kind, MAX_DIM, seed).and_then(|p| build_pair(kind, &p)) {
            probes.push((p.e, p.f));
        }
        for (e, f) in probes {
            let both = [outcome(kind, &e, &f), outcome(kind, &f, &e)]
                .into_iter()
                .all(|o| matches!(o, Ok(Outcome::Verdict(true))));
            let equal = if kind.is_real() { e.std() == f.std() } else { e == f };
            if both && !equal {
                t.fail(&[&e, &f], format!("{kind} relates distinct matrices both ways"));
            }
        }
    }
}

pub(super) fn transitivity(t: &mut Trial) {
    for kind in OrderKind::ALL {
        let seed = kind_seed(t, kind);
        let chain = ChainParams::sample(kind, MAX_DIM, seed).and_then(|p| build_chain(kind, &p));
        let Some(c) = t.check(&[], kind.name(), chain) else {
            continue;
        };
        expect_related(t, kind, &c.e, &c.f, "chain (E, F)");
        expect_related(t, kind, &c.f, &c.g, "chain (F, G)");
        expect_related(t, kind, &c.e, &c.g, "chain (E, G)");
    }
}

fn check_implications(t: &mut Trial, e: &DualMatrix, f: &DualMatrix, what: &str) -> Option<crate::orders::ImplicationMatrix> {
    let m = t.check(&[e, f], what, evaluate_all(e, f))?;
    for (a, b) in implication_violations(&m) {
        t.fail(&[e, f], format!("{what}: {a} holds but {b} does not"));
    }
    Some(m)
}

pub(super) fn implication_edges(t: &mut Trial) {
    for kind in OrderKind::ALL {
        let seed = kind_seed(t, kind);
        let generated = GeneratorParams::sample(kind, MAX_DIM, seed).and_then(|p| build_pair(kind, &p));
        if let Some(p) = t.check(&[], kind.name(), generated) {
            if let Some(m) = check_implications(t, &p.e, &p.f, "generated pair") {
                if m[&kind] != Outcome::Verdict(true) {
                    t.fail(&[&p.e, &p.f], format!("generated {kind} pair gives {:?}", m[&kind]));
                }
            }
        }
        let (e, f) = sample::random_pair(kind, seed, MAX_DIM);
        check_implications(t, &e, &f, "random pair");
    }
}

pub(super) fn fixture_non_implications(t: &mut Trial) {
    for ex in worked_examples() {
        let Some(m) = check_implications(t, &ex.e, &ex.f, ex.name) else {
            continue;
        };
        if m[&ex.holds] != Outcome::Verdict(true) || m[&ex.fails] != Outcome::Verdict(false) {
            t.fail(
                &[&ex.e, &ex.f],
                format!(
                    "{} example: {} gives {:?}, {} gives {:?}",
                    ex.name, ex.holds, m[&ex.holds], ex.fails, m[&ex.fails]
                ),
            );
        }
    }
}

/// Small dual matrix for the uniqueness checks, rows and columns at most 3.
fn small(t: &Trial, square: bool) -> DualMatrix {
    let mut rng = sample::rng(t.seed());
    let rows = rng.random_range(1..=3);
    let cols = if square { rows } else { rng.random_range(1..=3) };
    let raw = raw_dual(&mut rng, rows, cols);
    if rng.random_bool(0.5) {
        let (std, dual) = raw.into_parts();
        if square {
            sample::repair_index_one(std.clone(), &dual).unwrap_or_else(|| repair_dmpgi(std, &dual))
        } else {
            repair_dmpgi(std, &dual)
        }
    } else {
        raw
    }
}

pub(super) fn dmpgi_uniqueness(t: &mut Trial) {
    let e = small(t, false);
    let Some(exists) = t.check(&[&e], "existence", dmpgi_exists(&e)) else {
        return;
    };
    let Some(solutions) = t.check(&[&e], "linear system", dual_part_solutions(&e, InverseSystem::Penrose)) else {
        return;
    };
    match (exists.0, solutions) {
        (false, None) => {}
        (false, Some(_)) => t.fail(&[&e], "dual Penrose equations solvable although the DMPGI is said not to exist"),
        (true, None) => t.fail(&[&e], "DMPGI said to exist but the dual Penrose equations have no solution"),
        (true, Some(s)) => {
            if s.nullity != 0 {
                t.fail(&[&e], format!("dual Penrose solutions form a {}-dimensional family", s.nullity));
            }
            if let Some(x) = t.check(&[&e], "dmpgi", dmpgi(&e)) {
                if x.dual() != &s.particular {
                    t.fail(&[&e], format!("dmpgi dual part {} differs from the solution {}", x.dual(), s.particular));
                }
            }
        }
    }
}

pub(super) fn dggi_uniqueness(t: &mut Trial) {
    let e = small(t, true);
    let Some(index) = t.check(&[&e], "index", matrix_index(e.std())) else {
        return;
    };
    if index > 1 {
        // no group inverse of the standard part, so nothing to solve
        return;
    }
    let Some(exists) = t.check(&[&e], "dual index", dual_index_one(&e)) else {
        return;
    };
    let Some(solutions) = t.check(&[&e], "linear system", dual_part_solutions(&e, InverseSystem::Group)) else {
        return;
    };
    match (exists, solutions) {
        (false, None) => {}
        (false, Some(_)) => t.fail(&[&e], "dual group equations solvable without dual index one"),
        (true, None) => t.fail(&[&e], "dual index one but the dual group equations have no solution"),
        (true, Some(s)) => {
            if s.nullity != 0 {
                t.fail(&[&e], format!("dual group solutions form a {}-dimensional family", s.nullity));
            }
            if let Some(x) = t.check(&[&e], "dggi", dggi(&e)) {
                if x.dual() != &s.particular {
                    t.fail(&[&e], format!("dggi dual part {} differs from the solution {}", x.dual(), s.particular));
                }
            }
        }
    }
}

pub(super) fn inverse_substitution(t: &mut Trial) {
    let mut rng = sample::rng(t.seed());
    let rows = rng.random_range(1..=5);
    let cols = rng.random_range(1..=5);
    let e = with_dmpgi(&mut rng, rows, cols);
    if let Some(x) = t.check(&[&e], "dmpgi", dmpgi(&e)) {
        let bad = dual_penrose_failures(&e, &x);
        if !bad.is_empty() {
            t.fail(&[&e, &x], format!("DMPGI violates {}", bad.join(", ")));
        }
    }
    let g = with_index_one(&mut rng, rows);
    if let Some(x) = t.check(&[&g], "dggi", dggi(&g)) {
        let bad = dual_group_failures(&g, &x);
        if !bad.is_empty() {
            t.fail(&[&g, &x], format!("DGGI violates {}", bad.join(", ")));
        }
    }
}

pub(super) fn real_degeneration(t: &mut Trial) {
    let pairs = [
        (OrderKind::DualMinus, OrderKind::Minus),
        (OrderKind::DMStar, OrderKind::Star),
        (OrderKind::DMSharp, OrderKind::Sharp),
    ];
    for (dual_kind, real_kind) in pairs {
        let seed = kind_seed(t, real_kind);
        let mut probes = Vec::new();
        if let Ok(p) = GeneratorParams::sample(real_kind, MAX_DIM, seed).and_then(|p| build_pair(real_kind, &p)) {
            probes.push((p.e, p.f));
        }
        let (e, f) = sample::random_pair(real_kind, seed, MAX_DIM);
        probes.push((e, f));
        for (e, f) in probes {
            let (e, f) = (DualMatrix::real(e.std().clone()), DualMatrix::real(f.std().clone()));
            let verdicts = (outcome(dual_kind, &e, &f), outcome(real_kind, &e, &f));
            match verdicts {
                (Ok(a), Ok(b)) if a.verdict() == b.verdict() => {}
                (Err(Error::NotSquare { .. }), Err(Error::NotSquare { .. })) => {}
                (a, b) => t.fail(&[&e, &f], format!("{dual_kind} gives {a:?}, {real_kind} gives {b:?}")),
            }
        }
    }
}
