//! `su11`: sweeps, figure data and circuit checks for the SU(1,1) toolkit.
//!
//! Exit codes: 0 success (or a circuit with a Hamiltonian), 2 usage or an
//! incompatible option combination, 3 circuit without a quadratic Hamiltonian,
//! 4 Fock truncation failure, 5 I/O.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use config::{Format, Options};
use output::{emit, Table};

#[derive(Parser, Debug)]
#[command(name = "su11", version, about = "SU(1,1) interferometer sweeps and circuit checks")]
struct Cli {
    /// JSON file with default values for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// QFI(θ), energy and QFI/E at φ = π over θ ∈ [0, 2g+6]
    Fig2(Options),
    /// QFI and optional readout SNR over a g × θ × φ grid
    Sweep(Options),
    /// Whether V(g1, g2, θ) has a quadratic Hamiltonian, with its KAK factors
    CheckCircuit(Options),
    /// Maximum deviations between the Gaussian formulas and the Fock oracle
    OracleCompare(Options),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    NoHamiltonian,
    Truncation(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::NoHamiltonian => 3,
            CliError::Truncation(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<su11::Error> for CliError {
    fn from(e: su11::Error) -> Self {
        match e {
            su11::Error::TruncationFailure { .. } => CliError::Truncation(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn finish<R: serde::Serialize>(name: &str, table: Table<R>, opts: &Options, start: Instant) -> Result<(), CliError> {
    if let Some(path) = emit(name, &table, opts, start.elapsed())? {
        eprintln!("wrote {} rows to {}", table.rows.len(), path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => Options::load(path)?,
        None => Options::default(),
    };
    let start = Instant::now();
    match cli.command {
        Command::Fig2(o) => {
            let o = o.merged(file);
            finish("fig2", commands::fig2(&o)?, &o, start)
        }
        Command::Sweep(o) => {
            let o = o.merged(file);
            finish("sweep", commands::sweep(&o)?, &o, start)
        }
        Command::OracleCompare(o) => {
            let o = o.merged(file);
            let table = commands::oracle_compare(&o)?;
            for row in table.rows.iter().filter(|r| !r.pass) {
                eprintln!("warning: {} deviation {:e} exceeds {:e}", row.check, row.max_deviation, row.tolerance);
            }
            finish("oracle-compare", table, &o, start)
        }
        Command::CheckCircuit(o) => {
            let o = o.merged(file);
            let report = commands::check_circuit(&o)?;
            if let Some(w) = &report.warning {
                eprintln!("warning: {w}");
            }
            match o.format {
                Some(Format::Json) => {
                    let text = serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?;
                    println!("{text}");
                }
                _ => print!("{}", report.text()),
            }
            if report.exists {
                Ok(())
            } else {
                Err(CliError::NoHamiltonian)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::NoHamiltonian => {}
                CliError::Truncation(m) | CliError::Io(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
