use super::*;

#[test]
fn claim_names_are_unique_and_parse() {
    let all = Claim::all();
    let names: std::collections::BTreeSet<_> = all.iter().map(|c| c.name()).collect();
    assert_eq!(names.len(), all.len());
    for c in all {
        assert_eq!(c.name().parse::<Claim>().unwrap(), c);
    }
    assert_eq!(Group::Equivalence.claims().len(), 12);
}

#[test]
fn zero_trials_is_an_error() {
    assert_eq!(run_claim(Claim::Reflexivity, 0, 1), Err(Error::InvalidTrials));
    assert_eq!(run_equivalence_suite(0, 1), Err(Error::InvalidTrials));
}

#[test]
fn every_claim_passes_a_few_trials() {
    for claim in Claim::all() {
        let r = run_claim(claim, 3, 42).unwrap();
        assert!(r.passed(), "{claim}: {:#?}", r.failures);
    }
}

#[test]
fn runs_are_deterministic() {
    let a = run_claim(Claim::DmpgiExistenceRoutes, 10, 7).unwrap();
    let b = run_claim(Claim::DmpgiExistenceRoutes, 10, 7).unwrap();
    assert_eq!(a, b);
    assert_ne!(trial_seed(7, Claim::Reflexivity, 0), trial_seed(8, Claim::Reflexivity, 0));
}

#[test]
fn failures_carry_replayable_seeds() {
    let e = DualMatrix::from_rows(&[[1, 0], [0, 0]], &[[0, 0], [0, 1]]).unwrap();
    let mut t = Trial {
        claim: Claim::Reflexivity,
        seed: 99,
        failures: Vec::new(),
    };
    t.fail(&[&e], "example");
    assert_eq!(t.failures[0].seed, 99);
    assert_eq!(t.failures[0].digest, digest(&[&e]));
    assert_eq!(t.failures[0].digest.len(), 16);
    assert_eq!(replay(Claim::Reflexivity, 99), Vec::new());
}

#[test]
fn worked_examples_meet_their_stated_verdicts() {
    assert!(run_implication_suite(2, 0).unwrap().passed());
    assert_eq!(worked_examples().len(), 3);
}
