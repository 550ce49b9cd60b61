mod commands;
mod output;
mod state_file;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("invalid density operator: {0}")]
    Invalid(rebit_core::Error),
    #[error("{0}")]
    Io(String),
    #[error("oracle gap {0:e} is outside [{lo:e}, {hi:e}]", lo = commands::GAP_LO, hi = commands::GAP_HI)]
    Gap(f64),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Io(_) => 4,
            CliError::Gap(_) => 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Entanglement measures for two-rebit states.
#[derive(Debug, Parser)]
#[command(name = "rebit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report real and complex concurrence, EoF, τ spectrum and PT test for a state file.
    Measure {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tabulate the (I⊗I + α σy⊗σy)/4 family for α evenly spaced in [0, 1].
    AlphaSweep {
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print an optimal decomposition whose members all share preconcurrence tr τ.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the closed-form EoF with a numerical search over decompositions.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        /// Ensemble size; defaults to rank + 2.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample states at distance ε from I/4 and count real vs complex entanglement.
    Scan {
        /// Comma-separated radii in (0, 1].
        #[arg(long, value_delimiter = ',', required = true)]
        epsilons: Vec<f64>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measure {
            input,
            format,
            output,
        } => commands::measure(&input, format, output.as_deref()),
        Command::AlphaSweep { steps, output } => commands::alpha_sweep(steps, output.as_deref()),
        Command::Decompose {
            input,
            format,
            output,
        } => commands::decompose(&input, format, output.as_deref()),
        Command::Oracle {
            input,
            m,
            restarts,
            seed,
            format,
            output,
        } => commands::oracle(commands::OracleArgs {
            input: &input,
            m,
            restarts,
            seed,
            format,
            output: output.as_deref(),
        }),
        Command::Scan {
            epsilons,
            samples,
            seed,
            output,
        } => commands::scan(&epsilons, samples, seed, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rebit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
