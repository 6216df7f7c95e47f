//! `purcellnet` command line: frequency sweeps of qubit readout circuits,
//! port-position studies, two-configuration loss budgets and field-overlap
//! port placement.
//!
//! Exit status: 0 success, 2 usage, 3 invalid input, 4 numerical failure,
//! 5 inconsistent measurement.

mod commands;
mod error;
mod measurement;
mod netlist;
mod output;
mod units;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use purcellnet::field::RankMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Min,
    Max,
}

#[derive(Debug, Parser)]
#[command(name = "purcellnet", version, about = "Qubit lifetime and port-placement analysis")]
struct Cli {
    /// Directory for result files and the manifest.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Seed recorded in the manifest for reproducible runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the sweep point count.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(2..))]
    points: Option<u64>,
    /// Encoding of the main data files.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep a netlist and report lifetime sweet spots.
    Simulate { netlist: PathBuf },
    /// Sweep a transmission-line netlist at every listed tap position.
    SweepPort { netlist: PathBuf },
    /// Split measured decay rates into internal, drive-port and readout-port parts.
    LossBudget {
        /// Measurement with the port at the interference null.
        #[arg(long)]
        wispe: PathBuf,
        /// Measurement with the port at the resonator end.
        #[arg(long)]
        anti_wispe: PathBuf,
    },
    /// Rank candidate port regions from co-registered qubit and cavity fields.
    FieldOverlap {
        /// Grid file, CSV or binary.
        grid: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Min)]
        mode: ModeArg,
        /// Metric quantile gate.
        #[arg(long, default_value_t = 0.05)]
        q0: f64,
        /// Cavity-intensity quantile gate.
        #[arg(long, default_value_t = 0.5)]
        q1: f64,
        /// Smallest region kept, mm³.
        #[arg(long, default_value_t = 0.0)]
        min_volume_mm3: f64,
    },
}

pub struct Globals {
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = Globals { out_dir: cli.out_dir, seed: cli.seed, points: cli.points.map(|p| p as usize), format: cli.format };
    let result = match &cli.command {
        Command::Simulate { netlist } => commands::simulate(&g, netlist),
        Command::SweepPort { netlist } => commands::sweep_port(&g, netlist),
        Command::LossBudget { wispe, anti_wispe } => commands::loss_budget(&g, wispe, anti_wispe),
        Command::FieldOverlap { grid, mode, q0, q1, min_volume_mm3 } => {
            let mode = match mode {
                ModeArg::Min => RankMode::Min,
                ModeArg::Max => RankMode::Max,
            };
            commands::field_overlap(&g, grid, &commands::OverlapArgs { mode, q0: *q0, q1: *q1, min_volume_mm3: *min_volume_mm3 })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
