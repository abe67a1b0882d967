//! Seeded property campaigns over the rest of the crate.
//!
//! Every proven statement is a [`Claim`]. A claim runs as independent
//! trials, each with its own seed derived from the campaign seed, so any
//! recorded failure can be replayed alone with [`replay`].

mod equivalence;
mod sample;
mod suites;
mod uniqueness;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dual::DualMatrix;
use crate::error::{Error, Result};
use crate::orders::OrderKind;

pub use equivalence::Biconditional;
pub use uniqueness::{dual_part_solutions, DualPartSolutions, InverseSystem};

/// One violated claim, with what is needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    /// Seed of the trial that failed; see [`replay`].
    pub seed: u64,
    /// Hash of the inputs that failed.
    pub digest: String,
    pub claim: String,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Combines several results under one name, keeping failures sorted.
    pub fn merge(name: &str, parts: Vec<SuiteResult>) -> SuiteResult {
        let trials = parts.iter().map(|p| p.trials).sum();
        let mut failures: Vec<Failure> = parts.into_iter().flat_map(|p| p.failures).collect();
        failures.sort_by(|a, b| (a.seed, &a.claim).cmp(&(b.seed, &b.claim)));
        SuiteResult {
            name: name.to_string(),
            trials,
            failures,
        }
    }
}

/// Families of claims, each run as one suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Existence,
    Equivalence,
    Canonical,
    Axioms,
    Implication,
    Uniqueness,
    Substitution,
    Degeneration,
}

impl Group {
    pub const ALL: [Group; 8] = [
        Group::Existence,
        Group::Equivalence,
        Group::Canonical,
        Group::Axioms,
        Group::Implication,
        Group::Uniqueness,
        Group::Substitution,
        Group::Degeneration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Group::Existence => "existence",
            Group::Equivalence => "equivalence",
            Group::Canonical => "canonical",
            Group::Axioms => "axioms",
            Group::Implication => "implication",
            Group::Uniqueness => "uniqueness",
            Group::Substitution => "substitution",
            Group::Degeneration => "degeneration",
        }
    }

    pub fn claims(self) -> Vec<Claim> {
        Claim::all().into_iter().filter(|c| c.group() == self).collect()
    }
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Group::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown suite {s:?}")))
    }
}

/// Every statement the campaigns check. Each variant is wired to its trial
/// in [`Claim::trial`] by an exhaustive match.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    /// The block-rank, projector and dual-rank tests for the DMPGI agree.
    DmpgiExistenceRoutes,
    /// Dual index one implies that the DMPGI exists.
    DualIndexOneHasDmpgi,
    /// Two characterizations of an order agree.
    Equivalence(Biconditional),
    /// Canonical forms of every kind are related.
    CanonicalSoundness,
    /// Dual-minus forms with the coupled blocks specialized satisfy the
    /// stronger order.
    CanonicalSpecializations,
    /// Shifting a constrained block of a canonical form breaks the order.
    CanonicalPerturbation,
    Reflexivity,
    /// A generated pair with `rk(E) < rk(F)` is never related backwards.
    StrictAntisymmetry,
    /// Pairs related both ways are equal.
    MutualAntisymmetry,
    /// Generated chains are related end to end.
    Transitivity,
    /// No implication between orders is violated.
    ImplicationEdges,
    /// The worked examples separate dual-minus from dm-sharp and dm-sharp
    /// from d-sharp and g-sharp.
    FixtureNonImplications,
    /// The dual Penrose equations have at most one solution, and one exactly
    /// when the DMPGI exists.
    DmpgiUniqueness,
    /// The same for the dual group equations and dual index one.
    DggiUniqueness,
    /// DMPGI and DGGI outputs satisfy their defining equations.
    InverseSubstitution,
    /// On zero dual parts the dual-minus, dm-star and dm-sharp orders are
    /// the minus, star and sharp orders.
    RealDegeneration,
}

impl Claim {
    pub fn all() -> Vec<Claim> {
        let mut all = vec![Claim::DmpgiExistenceRoutes, Claim::DualIndexOneHasDmpgi];
        all.extend(Biconditional::ALL.into_iter().map(Claim::Equivalence));
        all.extend([
            Claim::CanonicalSoundness,
            Claim::CanonicalSpecializations,
            Claim::CanonicalPerturbation,
            Claim::Reflexivity,
            Claim::StrictAntisymmetry,
            Claim::MutualAntisymmetry,
            Claim::Transitivity,
            Claim::ImplicationEdges,
            Claim::FixtureNonImplications,
            Claim::DmpgiUniqueness,
            Claim::DggiUniqueness,
            Claim::InverseSubstitution,
            Claim::RealDegeneration,
        ]);
        all
    }

    pub fn group(self) -> Group {
        match self {
            Claim::DmpgiExistenceRoutes | Claim::DualIndexOneHasDmpgi => Group::Existence,
            Claim::Equivalence(_) => Group::Equivalence,
            Claim::CanonicalSoundness | Claim::CanonicalSpecializations | Claim::CanonicalPerturbation => {
                Group::Canonical
            }
            Claim::Reflexivity
            | Claim::StrictAntisymmetry
            | Claim::MutualAntisymmetry
            | Claim::Transitivity => Group::Axioms,
            Claim::ImplicationEdges | Claim::FixtureNonImplications => Group::Implication,
            Claim::DmpgiUniqueness | Claim::DggiUniqueness => Group::Uniqueness,
            Claim::InverseSubstitution => Group::Substitution,
            Claim::RealDegeneration => Group::Degeneration,
        }
    }

    pub fn name(self) -> String {
        let leaf = match self {
            Claim::DmpgiExistenceRoutes => "dmpgi-routes",
            Claim::DualIndexOneHasDmpgi => "dual-index-one",
            Claim::Equivalence(b) => return format!("equivalence/{}", b.name()),
            Claim::CanonicalSoundness => "soundness",
            Claim::CanonicalSpecializations => "specializations",
            Claim::CanonicalPerturbation => "perturbation",
            Claim::Reflexivity => "reflexivity",
            Claim::StrictAntisymmetry => "antisymmetry-strict",
            Claim::MutualAntisymmetry => "antisymmetry-mutual",
            Claim::Transitivity => "transitivity",
            Claim::ImplicationEdges => "edges",
            Claim::FixtureNonImplications => "fixtures",
            Claim::DmpgiUniqueness => "dmpgi",
            Claim::DggiUniqueness => "dggi",
            Claim::InverseSubstitution => "inverses",
            Claim::RealDegeneration => "real-parts",
        };
        format!("{}/{leaf}", self.group().name())
    }

    /// Trial count used when none is given.
    pub fn default_trials(self) -> usize {
        match self {
            Claim::DmpgiExistenceRoutes => 500,
            Claim::CanonicalSoundness | Claim::CanonicalSpecializations | Claim::Transitivity => 50,
            Claim::InverseSubstitution | Claim::RealDegeneration => 200,
            Claim::FixtureNonImplications => 1,
            _ => 100,
        }
    }

    /// Claims checked on fixed inputs run once whatever the trial count.
    fn is_fixed(self) -> bool {
        matches!(self, Claim::FixtureNonImplications)
    }

    fn trial(self, t: &mut Trial) {
        match self {
            Claim::DmpgiExistenceRoutes => suites::existence_routes(t),
            Claim::DualIndexOneHasDmpgi => suites::index_one_has_dmpgi(t),
            Claim::Equivalence(b) => equivalence::trial(b, t),
            Claim::CanonicalSoundness => suites::canonical_soundness(t),
            Claim::CanonicalSpecializations => suites::canonical_specializations(t),
            Claim::CanonicalPerturbation => suites::canonical_perturbation(t),
            Claim::Reflexivity => suites::reflexivity(t),
            Claim::StrictAntisymmetry => suites::strict_antisymmetry(t),
            Claim::MutualAntisymmetry => suites::mutual_antisymmetry(t),
            Claim::Transitivity => suites::transitivity(t),
            Claim::ImplicationEdges => suites::implication_edges(t),
            Claim::FixtureNonImplications => suites::fixture_non_implications(t),
            Claim::DmpgiUniqueness => suites::dmpgi_uniqueness(t),
            Claim::DggiUniqueness => suites::dggi_uniqueness(t),
            Claim::InverseSubstitution => suites::inverse_substitution(t),
            Claim::RealDegeneration => suites::real_degeneration(t),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::all()
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown claim {s:?}")))
    }
}

/// State of one running trial.
pub(crate) struct Trial {
    claim: Claim,
    seed: u64,
    failures: Vec<Failure>,
}

impl Trial {
    pub(crate) fn seed(&self) -> u64 {
        self.seed
    }

    pub(crate) fn fail(&mut self, inputs: &[&DualMatrix], witness: impl Into<String>) {
        self.failures.push(Failure {
            seed: self.seed,
            digest: digest(inputs),
            claim: self.claim.name(),
            witness: witness.into(),
        });
    }

    /// Records an unexpected library error as a failure.
    pub(crate) fn check<T>(&mut self, inputs: &[&DualMatrix], context: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(err) => {
                self.fail(inputs, format!("{context}: {err}"));
                None
            }
        }
    }
}

/// Short hash of the inputs of a trial.
pub fn digest(inputs: &[&DualMatrix]) -> String {
    let mut h = Sha256::new();
    for m in inputs {
        h.update(m.to_string().as_bytes());
        h.update(b";");
    }
    hex::encode(&h.finalize()[..8])
}

/// Seed of trial `index` of `claim` in a campaign seeded with `seed`.
pub fn trial_seed(seed: u64, claim: Claim, index: usize) -> u64 {
    let h = Sha256::digest(format!("{seed}/{claim}/{index}").as_bytes());
    u64::from_le_bytes(h[..8].try_into().expect("a digest has at least 8 bytes"))
}

/// Runs a single trial of `claim` from its trial seed.
pub fn replay(claim: Claim, trial_seed: u64) -> Vec<Failure> {
    let mut t = Trial {
        claim,
        seed: trial_seed,
        failures: Vec::new(),
    };
    claim.trial(&mut t);
    t.failures
}

/// Runs `trials` trials of `claim` in parallel on the current rayon pool.
pub fn run_claim(claim: Claim, trials: usize, seed: u64) -> Result<SuiteResult> {
    if trials == 0 {
        return Err(Error::InvalidTrials);
    }
    let trials = if claim.is_fixed() { 1 } else { trials };
    let mut failures: Vec<Failure> = (0..trials)
        .into_par_iter()
        .flat_map_iter(|i| replay(claim, trial_seed(seed, claim, i)))
        .collect();
    failures.sort_by_key(|f| f.seed);
    Ok(SuiteResult {
        name: claim.name(),
        trials,
        failures,
    })
}

/// Runs every claim of `group`, each with `trials` trials or its default.
pub fn run_group(group: Group, trials: Option<usize>, seed: u64) -> Result<Vec<SuiteResult>> {
    group
        .claims()
        .into_iter()
        .map(|c| run_claim(c, trials.unwrap_or(c.default_trials()), seed))
        .collect()
}

fn run_merged(group: Group, trials: usize, seed: u64) -> Result<SuiteResult> {
    Ok(SuiteResult::merge(group.name(), run_group(group, Some(trials), seed)?))
}

/// All characterization theorems, `trials` trials each.
pub fn run_equivalence_suite(trials: usize, seed: u64) -> Result<SuiteResult> {
    run_merged(Group::Equivalence, trials, seed)
}

/// Reflexivity, both antisymmetry checks and transitivity.
pub fn run_axiom_suite(trials: usize, seed: u64) -> Result<SuiteResult> {
    run_merged(Group::Axioms, trials, seed)
}

/// Implications on generated and random pairs, plus the worked examples.
pub fn run_implication_suite(trials: usize, seed: u64) -> Result<SuiteResult> {
    run_merged(Group::Implication, trials, seed)
}

/// Uniqueness of the DMPGI and DGGI on small inputs, default trial counts.
pub fn run_uniqueness_spotcheck(seed: u64) -> Result<SuiteResult> {
    Ok(SuiteResult::merge(Group::Uniqueness.name(), run_group(Group::Uniqueness, None, seed)?))
}

/// A worked example: a pair related under one order but not another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkedExample {
    pub name: &'static str,
    pub e: DualMatrix,
    pub f: DualMatrix,
    pub holds: OrderKind,
    pub fails: OrderKind,
}

/// The three pairs separating dual-minus from dm-sharp and dm-sharp from
/// d-sharp and g-sharp.
pub fn worked_examples() -> Vec<WorkedExample> {
    let e11: &[&[i64]] = &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]];
    let d11: &[&[i64]] = &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]];
    let m = |std: &[&[i64]], dual: &[&[i64]]| DualMatrix::from_rows(std, dual).expect("3x3 blocks");
    vec![
        WorkedExample {
            name: "first",
            e: m(e11, &[&[1, 1, 1], &[1, 0, 0], &[1, 0, 0]]),
            f: m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 0]], &[&[4, 3, 2], &[3, 1, 1], &[2, 1, 0]]),
            holds: OrderKind::DualMinus,
            fails: OrderKind::DMSharp,
        },
        WorkedExample {
            name: "second",
            e: m(e11, &[&[1, 4, 7], &[2, 0, 0], &[3, 0, 0]]),
            f: m(d11, &[&[1, 4, 7], &[2, -1, -2], &[3, -3, 0]]),
            holds: OrderKind::DMSharp,
            fails: OrderKind::DSharp,
        },
        WorkedExample {
            name: "third",
            e: m(e11, &[&[1, 2, 3], &[2, 0, 0], &[3, 0, 0]]),
            f: m(d11, &[&[1, 6, 3], &[6, 0, 0], &[3, 0, 0]]),
            holds: OrderKind::DMSharp,
            fails: OrderKind::GSharp,
        },
    ]
}

#[cfg(test)]
mod tests;
