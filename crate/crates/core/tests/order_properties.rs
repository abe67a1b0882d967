use dualorder::canonical::{gen_chain, gen_pair, ChainParams, GeneratorParams};
use dualorder::orders::{implication_matrix, outcome, Outcome};
use dualorder::OrderKind;
use proptest::prelude::*;

fn kind() -> impl Strategy<Value = OrderKind> {
    prop::sample::select(OrderKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_pairs_respect_every_implication(kind in kind(), seed in any::<u64>()) {
        let p = gen_pair(kind, &GeneratorParams::sample(kind, 5, seed).unwrap()).unwrap();
        let m = implication_matrix(&p.e, &p.f).unwrap();
        prop_assert_eq!(&m[&kind], &Outcome::Verdict(true));
    }

    #[test]
    fn generated_chains_are_transitive(kind in kind(), seed in any::<u64>()) {
        prop_assert!(gen_chain(kind, &ChainParams::sample(kind, 5, seed).unwrap()).is_ok());
    }

    #[test]
    fn strictly_larger_rank_never_relates_backwards(kind in kind(), seed in any::<u64>()) {
        let params = GeneratorParams::sample(kind, 5, seed).unwrap();
        prop_assume!(params.r_e < params.r_f);
        let p = gen_pair(kind, &params).unwrap();
        prop_assert_eq!(outcome(kind, &p.f, &p.e).unwrap(), Outcome::Verdict(false));
    }
}
