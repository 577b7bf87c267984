//! `multicut`: minimal multicut enumeration and multiple-failure
//! probabilities for k-out-of-n:F, consecutive k-out-of-n:F and arbitrary
//! coherent systems given by their cut sets.

mod commands;
mod output;
mod system;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::commands::Grid;
use crate::output::OutputFormat;
use crate::system::resolve;

/// Exit codes: 0 ok, 2 bad arguments, 3 capacity exceeded, 4 internal
/// cross-check failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(multicut::Error),
}

impl From<multicut::Error> for CliError {
    fn from(e: multicut::Error) -> Self {
        CliError::Library(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(e) => match e {
                multicut::Error::CapacityExceeded(_) | multicut::Error::Overflow(_) => 3,
                multicut::Error::CrossCheckFailed(_) => 4,
                _ => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Library(e) => e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "multicut",
    version,
    about = "Minimal multicuts and multiple-failure probabilities of coherent systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// k-out-of-n:F system (requires -k and -n)
    #[arg(long, group = "system")]
    kofn: bool,
    /// Consecutive k-out-of-n:F system (requires -k and -n)
    #[arg(long, group = "system")]
    cons: bool,
    /// Coherent system read from a JSON file with fields "n" and "cuts"
    #[arg(long, value_name = "FILE", group = "system", conflicts_with_all = ["k", "n"])]
    custom: Option<PathBuf>,
    /// Failure threshold (kofn) or window width (cons)
    #[arg(short)]
    k: Option<usize>,
    /// Component count
    #[arg(short)]
    n: Option<usize>,
    /// Common failure probability for i.i.d. components
    #[arg(short = 'p', conflicts_with = "probs")]
    p: Option<f64>,
    /// Per-component failure probabilities, comma separated
    #[arg(short = 'P', long, value_name = "p1,p2,...")]
    probs: Option<String>,
    /// Use the general fold instead of the closed-form fast paths
    #[arg(long)]
    force_general: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// List the minimal i-multicuts of a system
    Gens {
        #[command(flatten)]
        system: SystemArgs,
        /// Multicut multiplicity
        #[arg(short, default_value_t = 1)]
        i: u64,
    },
    /// Tabulate minimal multicut counts against raw subset counts
    Count {
        #[command(flatten)]
        system: SystemArgs,
        /// Last multiplicity row; defaults to the number of minimal cuts
        #[arg(long)]
        imax: Option<u64>,
    },
    /// Survivor series F(i) = prob{Y >= i}
    Survivor {
        #[command(flatten)]
        system: SystemArgs,
        /// Last row; defaults to the number of minimal cuts
        #[arg(long)]
        imax: Option<u64>,
    },
    /// Unreliability samples over an i.i.d. probability grid
    Unrel {
        #[command(flatten)]
        system: SystemArgs,
        /// Multicut multiplicity
        #[arg(short, default_value_t = 1)]
        i: u64,
        /// Probability grid start:end:step (endpoints inclusive)
        #[arg(long, default_value = "0:1:0.05")]
        grid: String,
    },
    /// Truncation bounds on the multiple-failure probability
    Bounds {
        #[command(flatten)]
        system: SystemArgs,
        /// Multicut multiplicity
        #[arg(short, default_value_t = 1)]
        i: u64,
        /// Largest truncation depth; defaults to the generator count
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Time the unpruned enumeration against the specialized one
    Bench {
        #[command(flatten)]
        system: SystemArgs,
        /// Last multiplicity row; defaults to the number of minimal cuts
        #[arg(long)]
        imax: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let (args, table) = match &cli.command {
        Command::Gens { system, i } => {
            let resolved = resolve_args(system)?;
            (system, commands::cmd_gens(&resolved, *i)?)
        }
        Command::Count { system, imax } => {
            let resolved = resolve_args(system)?;
            (system, commands::cmd_count(&resolved, *imax)?)
        }
        Command::Survivor { system, imax } => {
            let resolved = resolve_args(system)?;
            (system, commands::cmd_survivor(&resolved, *imax)?)
        }
        Command::Unrel { system, i, grid } => {
            let resolved = resolve_args(system)?;
            let grid = Grid::parse(grid)?;
            (system, commands::cmd_unrel(&resolved, *i, &grid)?)
        }
        Command::Bounds { system, i, depth } => {
            let resolved = resolve_args(system)?;
            (system, commands::cmd_bounds(&resolved, *i, *depth)?)
        }
        Command::Bench { system, imax } => {
            let resolved = resolve_args(system)?;
            (system, commands::cmd_bench(&resolved, *imax)?)
        }
    };
    Ok(table.render(args.format))
}

fn resolve_args(args: &SystemArgs) -> Result<system::ResolvedSystem, CliError> {
    resolve(
        args.kofn,
        args.cons,
        args.custom.as_ref(),
        args.k,
        args.n,
        args.p,
        args.probs.as_deref(),
        args.force_general,
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
