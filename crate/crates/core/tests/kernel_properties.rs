use dualorder::kernel::{full_rank_factorization, group_inverse, int, moore_penrose, rank, rref, RealMatrix};
use num_traits::Zero;
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = RealMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c)
            .prop_map(move |v| RealMatrix::from_fn(r, c, |i, j| int(v[i * c + j])))
    })
}

/// Products of two thin factors, so rank-deficient matrices are common.
fn low_rank(max: usize) -> impl Strategy<Value = RealMatrix> {
    (1..=max, 1..=max, 0..=max).prop_flat_map(|(r, c, k)| {
        (prop::collection::vec(-3i64..=3, r * k), prop::collection::vec(-3i64..=3, k * c)).prop_map(
            move |(a, b)| {
                let a = RealMatrix::from_fn(r, k, |i, j| int(a[i * k + j]));
                let b = RealMatrix::from_fn(k, c, |i, j| int(b[i * c + j]));
                &a * &b
            },
        )
    })
}

fn naive_product(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    RealMatrix::from_fn(a.rows(), b.cols(), |i, j| {
        (0..a.cols()).fold(dualorder::Rational::zero(), |acc, k| acc + &a[(i, k)] * &b[(k, j)])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn product_matches_entrywise_sums(a in low_rank(4), seed in 0i64..5) {
        let p = moore_penrose(&a).unwrap();
        let b = p.scale(&dualorder::kernel::ratio(seed + 1, 3));
        prop_assert_eq!(&a * &b, naive_product(&a, &b));
    }

    #[test]
    fn rank_agrees_with_echelon_pivots(m in low_rank(5)) {
        prop_assert_eq!(rank(&m), rref(&m).pivots.len());
    }

    #[test]
    fn rank_of_transpose(m in matrix(5)) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn full_rank_factorization_round_trips(m in low_rank(5)) {
        let f = full_rank_factorization(&m);
        prop_assert_eq!(&f.left * &f.right, m.clone());
        prop_assert_eq!(rank(&f.left), f.rank);
        prop_assert_eq!(rank(&f.right), f.rank);
        prop_assert_eq!(f.rank, rank(&m));
    }

    #[test]
    fn rref_is_idempotent(m in low_rank(5)) {
        let once = rref(&m);
        prop_assert_eq!(rref(&once.matrix), once);
    }

    #[test]
    fn moore_penrose_is_an_involution(m in low_rank(4)) {
        let p = moore_penrose(&m).unwrap();
        prop_assert_eq!(&(&m * &p) * &m, m.clone());
        prop_assert_eq!(&(&p * &m) * &p, p.clone());
        prop_assert!((&m * &p).is_symmetric());
        prop_assert!((&p * &m).is_symmetric());
        prop_assert_eq!(moore_penrose(&p).unwrap(), m);
    }

    #[test]
    fn group_inverse_of_symmetric_is_moore_penrose(m in low_rank(4)) {
        let s = &m * &m.transpose();
        prop_assert_eq!(group_inverse(&s).unwrap(), moore_penrose(&s).unwrap());
    }
}
