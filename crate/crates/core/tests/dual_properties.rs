use dualorder::dual::{dggi, dmpgi, dual_index_one, dual_penrose_failures, gdgi, mpdgi};
use dualorder::kernel::{group_inverse, int, inverse, RealMatrix};
use dualorder::verifier::{dual_part_solutions, InverseSystem};
use dualorder::DualMatrix;
use proptest::prelude::*;

fn ints(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = RealMatrix> {
    prop::collection::vec(-range..=range, rows * cols)
        .prop_map(move |v| RealMatrix::from_fn(rows, cols, |i, j| int(v[i * cols + j])))
}

/// A low-rank standard part with a dual part confined to its row and column
/// spaces, `E0 = E X E` style.
fn confined(max: usize) -> impl Strategy<Value = DualMatrix> {
    (1..=max, 1..=max, 0..=max).prop_flat_map(|(r, c, k)| {
        (ints(r, k, 3), ints(k, c, 3), ints(c, r, 2)).prop_map(|(a, b, x)| {
            let e = &a * &b;
            let e0 = &(&e * &x) * &e;
            DualMatrix::new(e, e0).unwrap()
        })
    })
}

/// `P diag(D, O) P^-1` with `E0 = E X E`, so both group-type inverses exist.
fn confined_index_one(max: usize) -> impl Strategy<Value = DualMatrix> {
    (1..=max).prop_flat_map(|n| {
        (0..=n, ints(n, n, 3), ints(n, n, 3), ints(n, n, 2)).prop_filter_map("singular", move |(k, d, p, x)| {
            let p_inv = inverse(&p).ok()?;
            let mut coords = RealMatrix::zeros(n, n);
            let block = d.block(0, 0, k, k);
            inverse(&block).ok()?;
            coords.set_block(0, 0, &block);
            let e = &(&p * &coords) * &p_inv;
            let e0 = &(&e * &x) * &e;
            Some(DualMatrix::new(e, e0).unwrap())
        })
    })
}

fn dual(max: usize) -> impl Strategy<Value = DualMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        (ints(r, c, 3), ints(r, c, 3)).prop_map(|(a, b)| DualMatrix::new(a, b).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn dmpgi_is_mpdgi_when_dual_part_is_confined(e in confined(4)) {
        prop_assert_eq!(dmpgi(&e).unwrap(), mpdgi(&e));
    }

    #[test]
    fn dggi_is_gdgi_when_dual_part_is_confined(e in confined_index_one(4)) {
        prop_assert!(dual_index_one(&e).unwrap());
        prop_assert_eq!(dggi(&e).unwrap(), gdgi(&e).unwrap());
    }

    #[test]
    fn dggi_and_gdgi_share_the_standard_part(e in confined_index_one(4), noise in ints(4, 4, 2)) {
        let n = e.shape().0;
        let g = group_inverse(e.std()).unwrap();
        let moved = DualMatrix::new(e.std().clone(), e.dual() + &noise.block(0, 0, n, n)).unwrap();
        prop_assert_eq!(gdgi(&moved).unwrap().std().clone(), g.clone());
        if let Ok(x) = dggi(&moved) {
            prop_assert_eq!(x.std(), &g);
        }
    }

    #[test]
    fn dmpgi_matches_the_solved_equations(e in dual(3)) {
        match (dmpgi(&e), dual_part_solutions(&e, InverseSystem::Penrose).unwrap()) {
            (Ok(x), Some(s)) => {
                prop_assert_eq!(s.nullity, 0);
                prop_assert_eq!(x.dual(), &s.particular);
                prop_assert!(dual_penrose_failures(&e, &x).is_empty());
            }
            (Err(_), None) => {}
            (x, s) => prop_assert!(false, "dmpgi {:?} but solutions {:?}", x, s),
        }
    }

    #[test]
    fn dual_product_is_associative(a in ints(2, 3, 3), b in ints(2, 3, 3), c in ints(3, 3, 3), d in ints(3, 3, 3), f in ints(3, 2, 3), g in ints(3, 2, 3)) {
        let x = DualMatrix::new(a, b).unwrap();
        let y = DualMatrix::new(c, d).unwrap();
        let z = DualMatrix::new(f, g).unwrap();
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!((&x * &y).transpose(), &y.transpose() * &x.transpose());
    }
}
