//! Integer views of rational rows, used to avoid a gcd per arithmetic step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// The entries times their least common denominator, and that denominator.
pub(crate) fn scaled<'a>(xs: impl Iterator<Item = &'a Rational> + Clone) -> (Vec<BigInt>, BigInt) {
    let lcm = xs
        .clone()
        .fold(BigInt::one(), |acc, x| if x.denom().is_one() { acc } else { acc.lcm(x.denom()) });
    let ints = xs
        .map(|x| {
            if x.denom() == &lcm {
                x.numer().clone()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    (ints, lcm)
}

/// Rank by fraction-free elimination on integer rows.
pub(crate) fn integer_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &row[j] * &pivot_row[c] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "fraction-free step must divide exactly");
                row[j] = v / &prev;
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}
