//! `ppsim`: single-query oracle games on pseudo-pure states.
//!
//! Subcommands: `dj`, `simon`, `sweep`, `werner`, `verify`. Exit codes:
//! 0 success, 1 verification-check failure, 2 usage error. Identical
//! arguments (including seeds) produce byte-identical output.

use clap::{Parser, Subcommand, ValueEnum};

mod dj;
mod output;
mod separability;
mod simon;
mod sweep;
mod verify;
mod werner;

#[derive(Parser, Debug)]
#[command(
    name = "ppsim",
    version,
    about = "Single-query oracle games on pseudo-pure states: exact distributions, \
             density-matrix simulation, and information analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Constant-vs-balanced game: outcome probabilities and information
    Dj(dj::DjArgs),
    /// Hidden-xor-mask game: outcome distribution and information
    Simon(simon::SimonArgs),
    /// Grid sweeps of the information curves, written as CSV
    Sweep(sweep::SweepArgs),
    /// Two-qubit Werner state: purity, witness value, verdict
    Werner(werner::WernerArgs),
    /// Run the built-in cross-check suite
    Verify(verify::VerifyArgs),
}

/// Whether a game command also runs the dense density-matrix cross-check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Simulate,
    Both,
}

impl Mode {
    pub fn simulates(&self) -> bool {
        matches!(self, Mode::Simulate | Mode::Both)
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dj(args) => dj::run(args),
        Command::Simon(args) => simon::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Werner(args) => werner::run(args),
        Command::Verify(args) => verify::run(args),
    };
    if let Err(err) = result {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
