use std::path::PathBuf;
use std::process::ExitCode;

use apx_core::montecarlo::DEFAULT_TRIALS;
use apx_core::report::Format;
use apx_core::scenarios::Pairing;
use apx_core::ModelId;
use clap::{Args, Parser, Subcommand};

mod commands;

/// Approximate RTS battle outcomes with damage-pool models.
#[derive(Debug, Parser)]
#[command(name = "apx", version)]
struct Cli {
    /// Unit catalog (TOML). Defaults to the built-in catalog.
    #[arg(long, global = true, env = "APX_CATALOG")]
    catalog: Option<PathBuf>,

    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct SimArgs {
    #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args, Clone)]
struct Selection {
    /// Restrict to one model; repeat for several.
    #[arg(long = "model", value_parser = parse_model)]
    models: Vec<ModelId>,

    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    round: Option<u8>,

    #[arg(long = "match", value_parser = parse_pairing)]
    pairing: Option<Pairing>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one matchup, from a scenario file or a benchmark id.
    Run {
        #[arg(long, conflicts_with_all = ["round", "pairing"])]
        scenario: Option<PathBuf>,

        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4), requires = "pairing")]
        round: Option<u8>,

        #[arg(long = "match", value_parser = parse_pairing, requires = "round")]
        pairing: Option<Pairing>,

        /// Model name from the registry (apx1..apx4).
        #[arg(long)]
        model: Option<String>,

        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        trials: Option<u32>,

        #[arg(long)]
        seed: Option<u64>,
    },
    /// Simulate benchmark matchups in the reference-table layout.
    Reproduce {
        #[command(flatten)]
        selection: Selection,

        #[command(flatten)]
        sim: SimArgs,

        /// Interleave the published rows for each matchup.
        #[arg(long)]
        with_reference: bool,
    },
    /// Simulated win rates next to the published model and test values.
    Compare {
        #[command(flatten)]
        selection: Selection,

        #[command(flatten)]
        sim: SimArgs,
    },
    /// Mean absolute win-rate error of each model against the test battles.
    Mae {
        /// Score the published model rows instead of fresh simulations.
        #[arg(long)]
        from_reference: bool,

        #[command(flatten)]
        sim: SimArgs,
    },
    /// Show the unit catalog with derived stats.
    ListUnits,
    /// Show the benchmark matchups.
    ListMatchups,
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: apx_core::Error| e.to_string())
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse().map_err(|e: apx_core::Error| e.to_string())
}

fn parse_pairing(s: &str) -> Result<Pairing, String> {
    s.parse().map_err(|e: apx_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
