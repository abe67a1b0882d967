//! Command-line front end for exact dual-matrix orders and inverses.

mod commands;
mod matrix_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dualorder::OrderKind;

/// Exit statuses: 0 related or success, 1 not related or failed checks,
/// 2 precondition unmet, 3 input or internal error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Negative = 1,
    Precondition = 2,
    Error = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dualorder::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        use dualorder::Error as E;
        match self {
            CliError::Core(
                E::PreconditionUnmet(_)
                | E::IndexNotOne { .. }
                | E::NotSquare { .. }
                | E::DmpgiDoesNotExist { .. }
                | E::DggiDoesNotExist { .. },
            ) => Status::Precondition,
            _ => Status::Error,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dualorder", version, about = "Exact partial orders and generalized inverses of dual matrices")]
pub struct Cli {
    /// Print structured JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for generation and verification.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads for verification; all cores when omitted.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether E is below F in an order.
    Check {
        #[arg(value_parser = parse_kind)]
        order: OrderKind,
        e: PathBuf,
        f: PathBuf,
    },
    /// Compute a generalized inverse.
    Inverse { which: InverseKind, file: PathBuf },
    /// Write a seeded pair (or chain) related under an order.
    Generate(GenerateArgs),
    /// Run verification campaigns.
    Verify(VerifyArgs),
    /// Print the dual rank data of a matrix.
    Rank { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InverseKind {
    Mpdgi,
    Dmpgi,
    Dggi,
    Gdgi,
    Mp,
    Group,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(value_parser = parse_kind)]
    pub order: OrderKind,
    /// Number of rows.
    #[arg(long, short = 'n')]
    pub rows: usize,
    /// Number of columns; defaults to the number of rows.
    #[arg(long)]
    pub cols: Option<usize>,
    /// Rank of E.
    #[arg(long)]
    pub re: usize,
    /// Rank of F.
    #[arg(long)]
    pub rf: usize,
    /// Rank of G; requires --chain.
    #[arg(long, requires = "chain")]
    pub rg: Option<usize>,
    /// Generate a chain E <= F <= G.
    #[arg(long)]
    pub chain: bool,
    /// Write real matrices without dual parts; needs a real order.
    #[arg(long)]
    pub real: bool,
    /// Output path prefix; files are PREFIX-E.json, PREFIX-F.json and PREFIX-G.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suites to run; all when omitted.
    pub suites: Vec<String>,
    /// Run every suite; the same as naming none.
    #[arg(long, conflicts_with_all = ["suites", "claim"])]
    pub all: bool,
    /// Trials per claim; each claim's default when omitted.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Run a single claim, by name.
    #[arg(long, conflicts_with = "suites")]
    pub claim: Option<String>,
    /// Replay one trial of --claim from its recorded seed.
    #[arg(long, requires = "claim")]
    pub replay: Option<u64>,
}

fn parse_kind(s: &str) -> Result<OrderKind, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { Status::Error } else { Status::Ok };
            let _ = err.print();
            return ExitCode::from(code as u8);
        }
    };
    let status = match commands::run(&cli) {
        Ok(status) => status,
        Err(err) => {
            eprintln!("error: {err}");
            err.status()
        }
    };
    ExitCode::from(status as u8)
}
