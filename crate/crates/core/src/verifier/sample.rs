//! Random inputs for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{draw_invertible, draw_matrix, draw_nonsingular, sample_shape};
use crate::dual::DualMatrix;
use crate::kernel::{group_inverse, int, moore_penrose, RealMatrix};
use crate::orders::OrderKind;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer matrix of rank at most `r`, as a product of two small factors.
pub(crate) fn low_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize, r: usize) -> RealMatrix {
    let a = RealMatrix::from_fn(rows, r, |_, _| int(rng.random_range(-3..=3)));
    let b = RealMatrix::from_fn(r, cols, |_, _| int(rng.random_range(-3..=3)));
    &a * &b
}

/// A standard part of random rank with a random dual part.
pub(crate) fn raw_dual(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DualMatrix {
    let r = rng.random_range(0..=rows.min(cols));
    let e = low_rank(rng, rows, cols, r);
    let e0 = draw_matrix(rng, rows, cols);
    DualMatrix::new(e, e0).expect("shapes match")
}

/// Removes from `e0` the component `(I - E E^+) E0 (I - E^+ E)` that blocks
/// the DMPGI of `(E, E0)`.
pub(crate) fn repair_dmpgi(e: RealMatrix, e0: &RealMatrix) -> DualMatrix {
    let (m, n) = e.shape();
    let p = moore_penrose(&e).expect("Moore-Penrose inverse always exists");
    let left = &RealMatrix::identity(m) - &(&e * &p);
    let right = &RealMatrix::identity(n) - &(&p * &e);
    let dual = e0 - &(&(&left * e0) * &right);
    DualMatrix::new(e, dual).expect("shapes match")
}

/// Same with the group projector `I - E E^#`, giving dual index one when the
/// index of `E` is at most one.
pub(crate) fn repair_index_one(e: RealMatrix, e0: &RealMatrix) -> Option<DualMatrix> {
    let n = e.rows();
    let g = group_inverse(&e).ok()?;
    let left = &RealMatrix::identity(n) - &(&e * &g);
    let right = &RealMatrix::identity(n) - &(&g * &e);
    let dual = e0 - &(&(&left * e0) * &right);
    Some(DualMatrix::new(e, dual).expect("shapes match"))
}

pub(crate) fn with_dmpgi(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DualMatrix {
    let raw = raw_dual(rng, rows, cols);
    let (e, e0) = raw.into_parts();
    repair_dmpgi(e, &e0)
}

/// `P diag(D, O) P^-1` of random rank with a repaired dual part.
pub(crate) fn with_index_one(rng: &mut ChaCha8Rng, n: usize) -> DualMatrix {
    let r = rng.random_range(0..=n);
    let mut coords = RealMatrix::zeros(n, n);
    coords.set_block(0, 0, &draw_invertible(rng, r, false));
    let e = draw_nonsingular(rng, n).apply(&coords);
    let e0 = draw_matrix(rng, n, n);
    repair_index_one(e, &e0).expect("similar to diag(D, O)")
}

/// A matrix meeting the precondition of `kind`. Real kinds get a zero dual
/// part.
pub(crate) fn satisfying(kind: OrderKind, rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> DualMatrix {
    let x = if kind.needs_index_one() {
        with_index_one(rng, rows)
    } else {
        with_dmpgi(rng, rows, cols)
    };
    if kind.is_real() {
        DualMatrix::real(x.std().clone())
    } else {
        x
    }
}

/// `E` moved by a matrix of rank at most one, keeping the precondition of
/// `kind` when possible and otherwise drawing afresh.
pub(crate) fn nearby(kind: OrderKind, rng: &mut ChaCha8Rng, e: &DualMatrix) -> DualMatrix {
    let (rows, cols) = e.shape();
    let std = e.std() + &low_rank(rng, rows, cols, 1);
    let dual = e.dual() + &draw_matrix(rng, rows, cols);
    let moved = if kind.needs_index_one() {
        repair_index_one(std, &dual)
    } else {
        Some(repair_dmpgi(std, &dual))
    };
    match moved {
        Some(x) if kind.is_real() => DualMatrix::real(x.std().clone()),
        Some(x) => x,
        None => satisfying(kind, rng, rows, cols),
    }
}

/// A pair that meets the precondition of `kind`, mostly unrelated.
pub(crate) fn random_pair(kind: OrderKind, seed: u64, max_dim: usize) -> (DualMatrix, DualMatrix) {
    let (rows, cols, _) = sample_shape(kind, max_dim, 1, seed).expect("max_dim is positive");
    let mut rng = rng(seed);
    let e = satisfying(kind, &mut rng, rows, cols);
    let f = if rng.random_bool(0.5) {
        nearby(kind, &mut rng, &e)
    } else {
        satisfying(kind, &mut rng, rows, cols)
    };
    (e, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{dmpgi_exists, dual_index_one};

    #[test]
    fn repaired_inputs_meet_their_preconditions() {
        let mut r = rng(3);
        for _ in 0..20 {
            assert!(dmpgi_exists(&with_dmpgi(&mut r, 3, 4)).unwrap().0);
            assert!(dual_index_one(&with_index_one(&mut r, 4)).unwrap());
        }
    }

    #[test]
    fn random_pairs_meet_preconditions() {
        for kind in OrderKind::ALL {
            for seed in 0..5 {
                let (e, f) = random_pair(kind, seed, 4);
                assert!(crate::orders::outcome(kind, &e, &f).unwrap().verdict().is_some(), "{kind}");
            }
        }
    }
}
