use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use dualorder::canonical::{gen_chain, gen_pair, ChainParams, GeneratorParams};
use dualorder::dual::{DualRankValue, dggi, dmpgi, dmpgi_existence_routes, dual_rank, gdgi, mpdgi};
use dualorder::kernel::{group_inverse, moore_penrose};
use dualorder::orders::{check_order, OrderReport};
use dualorder::verifier::{replay, run_claim, run_group, Claim, Group, SuiteResult};
use dualorder::{DualMatrix, OrderKind};
use serde_json::json;

use crate::matrix_file::MatrixFile;
use crate::{Cli, CliError, Command, GenerateArgs, InverseKind, Status, VerifyArgs};

pub fn run(cli: &Cli) -> Result<Status, CliError> {
    match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| dispatch(cli)),
        None => dispatch(cli),
    }
}

fn dispatch(cli: &Cli) -> Result<Status, CliError> {
    match &cli.command {
        Command::Check { order, e, f } => check(cli, *order, e, f),
        Command::Inverse { which, file } => inverse(*which, file),
        Command::Generate(args) => generate(cli, args),
        Command::Verify(args) => verify(cli, args),
        Command::Rank { file } => rank(cli, file),
    }
}

fn load(path: &Path) -> Result<MatrixFile, CliError> {
    let input = |message: String| CliError::Input {
        path: path.to_path_buf(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| input(e.to_string()))?;
    MatrixFile::parse(&text).map_err(input)
}

fn print_json(value: &impl serde::Serialize) {
    let mut out = std::io::stdout().lock();
    // a closed pipe downstream is not an error of ours
    if serde_json::to_writer_pretty(&mut out, value).is_ok() {
        let _ = writeln!(out);
    }
}

fn check(cli: &Cli, order: OrderKind, e: &Path, f: &Path) -> Result<Status, CliError> {
    let (e, f) = (load(e)?.matrix, load(f)?.matrix);
    let report = check_order(order, &e, &f)?;
    if cli.json {
        print_json(&report);
    } else {
        print!("{}", describe(&report));
    }
    Ok(if report.verdict { Status::Ok } else { Status::Negative })
}

fn describe_ranks(name: &str, r: &DualRankValue) -> String {
    format!(
        "{name}: rk[[E0,E],[E,O]] = {}, rk = {}, dual rank = {}",
        r.block_rank, r.std_rank, r.dual_rank
    )
}

/// Human-readable report: verdict, each route with its violated equations,
/// and the rank data.
pub fn describe(report: &OrderReport) -> String {
    let mut out = String::new();
    let verdict = if report.verdict { "related" } else { "not related" };
    let _ = writeln!(out, "{}: {verdict}", report.kind);
    for route in &report.routes {
        let _ = writeln!(out, "  route {}: {}", route.name, route.verdict);
        for w in &route.witnesses {
            let _ = writeln!(out, "    violated: {}", w.equation);
            let _ = writeln!(out, "      left  = {}", w.lhs);
            let _ = writeln!(out, "      right = {}", w.rhs);
        }
    }
    let d = &report.rank_data;
    let _ = writeln!(out, "ranks: rk(E) = {}, rk(F) = {}, rk(F - E) = {}", d.r_e, d.r_f, d.r_diff);
    if let Some(dual) = &d.dual {
        for (name, r) in [("E", &dual.e), ("F", &dual.f), ("F - E", &dual.difference)] {
            let _ = writeln!(out, "  {}", describe_ranks(name, r));
        }
    }
    out
}

fn inverse(which: InverseKind, file: &Path) -> Result<Status, CliError> {
    let m = load(file)?.matrix;
    let out = match which {
        InverseKind::Mpdgi => MatrixFile::dual(mpdgi(&m)),
        InverseKind::Dmpgi => MatrixFile::dual(dmpgi(&m)?),
        InverseKind::Dggi => MatrixFile::dual(dggi(&m)?),
        InverseKind::Gdgi => MatrixFile::dual(gdgi(&m)?),
        InverseKind::Mp => MatrixFile::real(moore_penrose(m.std())?),
        InverseKind::Group => MatrixFile::real(group_inverse(m.std())?),
    };
    print!("{}", out.render());
    Ok(Status::Ok)
}

fn rank(cli: &Cli, file: &Path) -> Result<Status, CliError> {
    let m = load(file)?.matrix;
    let ranks = dual_rank(&m);
    let exists = dmpgi_existence_routes(&m).block_rank;
    if cli.json {
        print_json(&json!({ "ranks": ranks, "dmpgi_exists": exists }));
    } else {
        println!("{}", describe_ranks("matrix", &ranks));
        println!("DMPGI exists: {}", if exists { "yes" } else { "no" });
    }
    Ok(Status::Ok)
}

fn write_file(path: PathBuf, file: &MatrixFile) -> Result<PathBuf, CliError> {
    std::fs::write(&path, file.render()).map_err(|e| CliError::Input {
        path: path.clone(),
        message: e.to_string(),
    })?;
    Ok(path)
}

fn generate(cli: &Cli, args: &GenerateArgs) -> Result<Status, CliError> {
    if args.real && !args.order.is_real() {
        return Err(CliError::Usage(format!("--real needs a real order, not {}", args.order)));
    }
    let rows = args.rows;
    let cols = args.cols.unwrap_or(rows);
    let kind = args.order;
    let (matrices, ranks): (Vec<DualMatrix>, Vec<usize>) = if args.chain {
        let rg = args.rg.ok_or_else(|| CliError::Usage("--chain needs --rg".into()))?;
        let ranks = [args.re, args.rf, rg];
        let c = gen_chain(kind, &ChainParams::random(kind, rows, cols, ranks, cli.seed)?)?;
        (vec![c.e, c.f, c.g], ranks.to_vec())
    } else {
        let p = gen_pair(kind, &GeneratorParams::random(kind, rows, cols, args.re, args.rf, cli.seed)?)?;
        (vec![p.e, p.f], vec![args.re, args.rf])
    };
    let mut paths = Vec::new();
    for (name, m) in ["E", "F", "G"].into_iter().zip(matrices) {
        let file = if args.real {
            MatrixFile::real(m.std().clone())
        } else {
            MatrixFile::dual(m)
        };
        let mut path = args.out.clone().into_os_string();
        path.push(format!("-{name}.json"));
        paths.push(write_file(path.into(), &file)?);
    }
    if cli.json {
        print_json(&json!({
            "order": kind,
            "shape": [rows, cols],
            "ranks": ranks,
            "seed": cli.seed,
            "files": paths,
        }));
    } else {
        for p in &paths {
            println!("wrote {}", p.display());
        }
    }
    Ok(Status::Ok)
}

fn selected_claims(args: &VerifyArgs) -> Result<Vec<Vec<Claim>>, CliError> {
    if let Some(name) = &args.claim {
        let claim = name.parse::<Claim>().map_err(|_| CliError::Usage(format!("unknown claim {name:?}")))?;
        return Ok(vec![vec![claim]]);
    }
    let groups = if args.suites.is_empty() || args.suites.iter().any(|s| s == "all") {
        Group::ALL.to_vec()
    } else {
        args.suites
            .iter()
            .map(|s| s.parse::<Group>().map_err(|_| CliError::Usage(format!("unknown suite {s:?}"))))
            .collect::<Result<_, _>>()?
    };
    Ok(groups.into_iter().map(Group::claims).collect())
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<Status, CliError> {
    let started = Instant::now();
    let claims = selected_claims(args)?;
    let results: Vec<SuiteResult> = match args.replay {
        Some(seed) => {
            let claim = claims[0][0];
            vec![SuiteResult {
                name: claim.name(),
                trials: 1,
                failures: replay(claim, seed),
            }]
        }
        None if args.claim.is_some() => {
            let claim = claims[0][0];
            vec![run_claim(claim, args.trials.unwrap_or(claim.default_trials()), cli.seed)?]
        }
        None => {
            let mut all = Vec::new();
            for group in claims.iter().filter_map(|g| g.first().map(|c| c.group())) {
                all.extend(run_group(group, args.trials, cli.seed)?);
            }
            all
        }
    };
    let passed = results.iter().all(SuiteResult::passed);
    if cli.json {
        print_json(&json!({
            "seed": cli.seed,
            "passed": passed,
            "suites": results,
            "runtime": {
                "elapsed_ms": started.elapsed().as_millis() as u64,
                "threads": rayon::current_num_threads(),
            },
        }));
    } else {
        for r in &results {
            let mark = if r.passed() { "PASS" } else { "FAIL" };
            println!("{mark} {} ({} trials, {} failures)", r.name, r.trials, r.failures.len());
            for f in &r.failures {
                println!("  seed {} digest {}: {}", f.seed, f.digest, f.witness);
            }
        }
        println!("{} in {:.1?}", if passed { "all claims hold" } else { "failures found" }, started.elapsed());
    }
    Ok(if passed { Status::Ok } else { Status::Negative })
}
