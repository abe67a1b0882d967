//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Run with `cargo test -p dualorder-cli --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use dualorder::verifier::{run_claim, worked_examples, Biconditional, Claim, SuiteResult};
use serde_json::{json, Value};

const SEED: u64 = 42;

type Outcome = Result<String, String>;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn read_fixture(name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

/// Runs `check` through the binary and returns its exit code and JSON report.
fn check(order: &str, example: &str) -> (i32, Value) {
    let e = fixture(&format!("{example}-E.json"));
    let f = fixture(&format!("{example}-F.json"));
    let out = Command::new(env!("CARGO_BIN_EXE_dualorder"))
        .args(["--json", "check", order])
        .arg(e)
        .arg(f)
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), report)
}

fn expect_verdict(order: &str, example: &str, related: bool) -> Result<Value, String> {
    let (code, report) = check(order, example);
    let want = if related { 0 } else { 1 };
    if code != want || report["verdict"] != related {
        return Err(format!("{order} on {example}: exit {code}, verdict {}", report["verdict"]));
    }
    Ok(report)
}

fn witness<'a>(report: &'a Value, equation: &str) -> Result<&'a Value, String> {
    report["routes"]
        .as_array()
        .into_iter()
        .flatten()
        .flat_map(|r| r["witnesses"].as_array().into_iter().flatten())
        .find(|w| w["equation"] == equation)
        .ok_or_else(|| format!("{} report has no witness for {equation}", report["kind"]))
}

fn expect_eq(what: &str, got: &Value, want: Value) -> Result<(), String> {
    if *got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn within(limit: Duration, started: Instant) -> Result<String, String> {
    let elapsed = started.elapsed();
    if elapsed < limit {
        Ok(format!("{elapsed:.2?} < {limit:?}"))
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn first_example() -> Outcome {
    let started = Instant::now();
    expect_verdict("dual-minus", "first", true)?;
    let sharp = expect_verdict("sharp", "first", false)?;
    let w = witness(&sharp, "E^# E = E^# F")?;
    expect_eq("E^# E", &w["lhs"], json!([[1, 0, 0], [0, 0, 0], [0, 0, 0]]))?;
    expect_eq("E^# F", &w["rhs"], json!([[2, 1, 0], [0, 0, 0], [0, 0, 0]]))?;
    let dm = expect_verdict("dm-sharp", "first", false)?;
    expect_eq("rk(F - E)", &dm["rank_data"]["r_diff"], json!(1))?;
    expect_eq(
        "block rank of F - E",
        &dm["rank_data"]["dual"]["difference"]["block_rank"],
        json!(2),
    )?;
    within(Duration::from_secs(1), started)
}

fn second_example() -> Outcome {
    let started = Instant::now();
    expect_verdict("dm-sharp", "second", true)?;
    let report = expect_verdict("d-sharp", "second", false)?;
    let w = witness(&report, "E F0 + E0 F = E0 E + E E0")?;
    expect_eq("E F0 + E0 F", &w["lhs"], json!([[2, 8, 7], [2, 0, 0], [3, 0, 0]]))?;
    expect_eq("E0 E + E E0", &w["rhs"], json!([[2, 4, 7], [2, 0, 0], [3, 0, 0]]))?;
    within(Duration::from_secs(1), started)
}

fn third_example() -> Outcome {
    let started = Instant::now();
    expect_verdict("dm-sharp", "third", true)?;
    let report = expect_verdict("g-sharp", "third", false)?;
    let w = witness(&report, "E0 E = F0 E")?;
    let first_column = |m: &Value| json!([m[0][0], m[1][0], m[2][0]]);
    expect_eq("E0 E first column", &first_column(&w["lhs"]), json!([1, 2, 3]))?;
    expect_eq("F0 E first column", &first_column(&w["rhs"]), json!([1, 6, 3]))?;
    within(Duration::from_secs(1), started)
}

/// Runs each claim with an exact trial count and requires zero failures.
fn claims(runs: &[(Claim, usize)], limit: Option<Duration>) -> Outcome {
    let started = Instant::now();
    let mut trials = 0;
    for &(claim, n) in runs {
        let result: SuiteResult = run_claim(claim, n, SEED).map_err(|e| format!("{claim}: {e}"))?;
        if result.trials != n {
            return Err(format!("{claim} ran {} trials, expected {n}", result.trials));
        }
        if let Some(f) = result.failures.first() {
            return Err(format!(
                "{claim}: {} failures, first at seed {} digest {}: {}",
                result.failures.len(),
                f.seed,
                f.digest,
                f.witness
            ));
        }
        trials += n;
    }
    let summary = format!("{} claims, {trials} trials, 0 failures", runs.len());
    match limit {
        Some(limit) => within(limit, started).map(|t| format!("{summary}, {t}")),
        None => Ok(format!("{summary}, {:.2?}", started.elapsed())),
    }
}

fn fixtures_match_worked_examples() -> Result<(), String> {
    for ex in worked_examples() {
        for (part, m) in [("E", &ex.e), ("F", &ex.f)] {
            let name = format!("{}-{part}.json", ex.name);
            if read_fixture(&name) != serde_json::to_value(m).unwrap() {
                return Err(format!("{name} differs from the built-in {} example", ex.name));
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 first example", Box::new(first_example)),
        ("2 second example", Box::new(second_example)),
        ("3 third example", Box::new(third_example)),
        (
            "4 DMPGI existence routes agree",
            Box::new(|| claims(&[(Claim::DmpgiExistenceRoutes, 500)], Some(Duration::from_secs(30)))),
        ),
        (
            "5 equivalence suite",
            Box::new(|| {
                let runs: Vec<_> = Biconditional::ALL.iter().map(|&b| (Claim::Equivalence(b), 100)).collect();
                claims(&runs, Some(Duration::from_secs(120)))
            }),
        ),
        (
            "6 canonical-form soundness",
            Box::new(|| claims(&[(Claim::CanonicalSoundness, 50), (Claim::CanonicalSpecializations, 50)], None)),
        ),
        (
            "7 partial-order axioms",
            Box::new(|| {
                claims(
                    &[
                        (Claim::Reflexivity, 100),
                        (Claim::StrictAntisymmetry, 100),
                        (Claim::MutualAntisymmetry, 100),
                        (Claim::Transitivity, 50),
                    ],
                    None,
                )
            }),
        ),
        (
            "8 implication graph",
            Box::new(|| {
                fixtures_match_worked_examples()?;
                claims(&[(Claim::ImplicationEdges, 100), (Claim::FixtureNonImplications, 1)], None)
            }),
        ),
        (
            "9 inverse substitution",
            Box::new(|| claims(&[(Claim::InverseSubstitution, 200)], None)),
        ),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
