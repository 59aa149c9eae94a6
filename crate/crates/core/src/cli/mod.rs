//! Command-line front end: argument parsing, config files, and the four
//! commands behind the `branching-ot` binary.
//!
//! Exit codes: 0 success or witness, 1 input error, 2 solver failure,
//! 3 verification or probe violation.

mod commands;
mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::{cmd_experiment, cmd_probe, cmd_solve, cmd_verify};
pub use config::{ExperimentConfig, PlanSource, ProbeCommandConfig, ProbeTarget, SolveConfig, VerifyConfig};

use crate::lexot::{Mode, SolveError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("solver failure: {0}")]
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Solver(_) => EXIT_SOLVER,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::IterationCap(_) | SolveError::Infeasible(_) | SolveError::Certification(_) => {
                CliError::Solver(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Float,
    Rational,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Float => Mode::Float,
            ModeArg::Rational => Mode::Rational,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every subcommand; they override the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Instance JSON: `{"mu": ..., "nu": ..., "cost": ...}`.
    #[arg(long, global = true)]
    pub instance: Option<PathBuf>,
    /// Command config JSON.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solve an instance lexicographically.
    Solve,
    /// Probe a gauge for the cylinder-like property.
    Probe,
    /// Check a plan for monotonicity and map-ness.
    Verify,
    /// Run a refinement sweep.
    Experiment,
}

#[derive(Debug, Parser)]
#[command(name = "branching-ot", version, about = "Lexicographic optimal transport under branching norms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Solve => cmd_solve(&cli.options),
        Command::Probe => cmd_probe(&cli.options),
        Command::Verify => cmd_verify(&cli.options),
        Command::Experiment => cmd_experiment(&cli.options),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {what} {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{what} {}: {e}", path.display())))
}

/// Paths inside a config are relative to the config file.
fn resolve(base: Option<&Path>, path: &Path) -> PathBuf {
    match base.and_then(Path::parent) {
        Some(dir) if path.is_relative() => dir.join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(opts: &Options, body: &str) -> Result<(), CliError> {
    let mut body = body.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &opts.out {
        Some(path) => {
            std::fs::write(path, body).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}"))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn csv_string<R: serde::Serialize>(rows: &[R]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv output is utf-8")
}

fn finish(result: Result<i32, CliError>) -> i32 {
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("branching-ot: {e}");
            e.exit_code()
        }
    }
}
