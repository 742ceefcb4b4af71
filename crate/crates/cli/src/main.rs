use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tarifflab_core::cluster::{FeatureSet, DEFAULT_RESTARTS};

#[derive(Parser)]
#[command(name = "tarifflab", version, about = "Reciprocal tariff analysis reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Pin the run identifier (defaults to the current UTC timestamp)
    #[arg(long)]
    run_id: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Fit US reciprocal tariff against the partner tariff
    Regress {
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// K-means typology on reciprocal tariff and ECI
    Cluster {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        /// Also cluster on the tariff charged to the USA
        #[arg(long)]
        three_feature: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Project the import share shift from a tariff scenario
    Simulate {
        #[arg(long)]
        scenario: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run the causal-loop tariff dynamics
    Cld {
        /// JSON file with an optional `cld` section
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn run_id(pinned: Option<String>) -> String {
    pinned.unwrap_or_else(|| chrono::Utc::now().format("%Y%m%dT%H%M%SZ").to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Regress { data, common } => {
            tarifflab_cli::cmd_regress(&data, &common.out, &run_id(common.run_id))
        }
        Command::Cluster {
            data,
            k,
            seed,
            restarts,
            three_feature,
            common,
        } => {
            let features = if three_feature {
                FeatureSet::WithChargedTariff
            } else {
                FeatureSet::ReciprocalEci
            };
            tarifflab_cli::cmd_cluster(
                &data,
                k,
                seed,
                restarts,
                features,
                &common.out,
                &run_id(common.run_id),
            )
        }
        Command::Simulate { scenario, common } => {
            tarifflab_cli::cmd_simulate(&scenario, &common.out, &run_id(common.run_id))
        }
        Command::Cld { scenario, common } => {
            tarifflab_cli::cmd_cld(scenario.as_deref(), &common.out, &run_id(common.run_id))
        }
    };
    match result {
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
