//! `pstel` — success-probability × fidelity-enhancement analysis for
//! photon-subtracted two-mode squeezed vacuum teleportation resources.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Config;

/// Exit codes: 0 success, 2 usage error (clap), 3 parameter domain error,
/// 4 validation failure, 5 I/O error.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Validation(String),
    Io(String),
}

impl From<pstel_core::Error> for CliError {
    fn from(e: pstel_core::Error) -> Self {
        match e {
            pstel_core::Error::InvalidParam { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Validation(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Validation(m) | CliError::Io(m) => {
                m
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "pstel",
    about = "Fidelity, heralding probability and figure-of-merit analysis for photon-subtracted two-mode squeezed vacuum teleportation resources",
    version
)]
struct Cli {
    /// key=value file supplying defaults for any flag; flags override it
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F, P, ΔF and R at one parameter point
    Eval(commands::eval::EvalArgs),
    /// Sweep a parameter grid and write one CSV row per point
    Sweep(commands::sweep::SweepArgs),
    /// Extract level-set polylines of ΔF or ΔN in the (λ, T) plane
    Contours(commands::contours::ContoursArgs),
    /// Fidelity versus mean photon number curves
    Fvsn(commands::fvsn::FvsnArgs),
    /// Maximize R over (λ, T) for one detector and efficiency
    Optimize(commands::optimize::OptimizeArgs),
    /// The four standard optimization rows with reference comparison
    Table2(commands::table2::Table2Args),
    /// Compare every closed form against the Fock-space simulator
    OracleCheck(commands::oracle_check::OracleCheckArgs),
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct JsonFlag {
    /// Emit machine-readable JSON instead of aligned text
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        None => Config::default(),
    };
    let result = match cli.command {
        Command::Eval(args) => commands::eval::run(args, &cfg),
        Command::Sweep(args) => commands::sweep::run(args, &cfg),
        Command::Contours(args) => commands::contours::run(args, &cfg),
        Command::Fvsn(args) => commands::fvsn::run(args, &cfg),
        Command::Optimize(args) => commands::optimize::run(args, &cfg),
        Command::Table2(args) => commands::table2::run(args, &cfg),
        Command::OracleCheck(args) => commands::oracle_check::run(args, &cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    eprintln!("error: {}", e.message());
    ExitCode::from(e.exit_code())
}
