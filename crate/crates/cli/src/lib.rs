//! Command-line driver: instance generation, SCG sweeps, estimator comparison,
//! bias verification, rounding and brute-force optima.

pub mod gen;
pub mod oracle_cmds;
pub mod sweep;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use sweep::{Manifest, RunEntry, RunStatus};

/// Exit status for runtime failures.
pub const EXIT_RUNTIME: i32 = 1;
/// Exit status for usage and validation errors.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "scg", version, about = "Stochastic continuous greedy experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(gen::GenArgs),
    /// Run SCG for every (estimator, seed) pair and write trajectories plus a manifest.
    Run(sweep::RunArgs),
    /// Summarize a manifest as a pareto CSV (final utility vs total time).
    Compare(sweep::CompareArgs),
    /// Check the surrogate bias bounds by enumeration and print a margin table.
    Verify(oracle_cmds::VerifyArgs),
    /// Swap-round a trajectory's fractional output to an independent set.
    Round(oracle_cmds::RoundArgs),
    /// Brute-force optimum over the independent sets.
    Opt(oracle_cmds::OptArgs),
}

pub fn execute(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Gen(args) => gen::cmd_gen(&args),
        Command::Run(args) => sweep::cmd_run(&args).map(|_| ()),
        Command::Compare(args) => sweep::cmd_compare(&args).map(|_| ()),
        Command::Verify(args) => oracle_cmds::cmd_verify(&args),
        Command::Round(args) => oracle_cmds::cmd_round(&args),
        Command::Opt(args) => oracle_cmds::cmd_opt(&args),
    }
}

/// Maps an error to the process exit status.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<scg_core::Error>() {
            if e.is_validation() {
                return EXIT_USAGE;
            }
        }
    }
    EXIT_RUNTIME
}

/// Writes `text` to `path`, or to standard output when `path` is `-`.
pub(crate) fn emit(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)?;
        }
        _ => print!("{text}"),
    }
    Ok(())
}

pub(crate) fn parse_list<T: std::str::FromStr>(raw: &str) -> Result<Vec<T>, scg_core::Error>
where
    T::Err: std::fmt::Display,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e| scg_core::Error::Config(format!("`{s}`: {e}")))
        })
        .collect()
}
