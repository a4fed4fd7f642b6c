use std::process::ExitCode;

use clap::{Parser, Subcommand};

use percolab::experiments::{execute, ExperimentConfig, ExperimentKind, Settings};

#[derive(Parser)]
#[command(name = "percolab", version, about = "Percolation clusters versus repetitive subgraphs of Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-sample statistics of Bernoulli configurations.
    Sample(Settings),
    /// Pattern libraries of a subgraph model.
    Patterns(Settings),
    /// Finite-stage repetitiveness check of a subgraph model.
    RepetitiveCheck(Settings),
    /// Probability that the identity cluster matches the model's patterns.
    Singularity(Settings),
    /// Probability of reaching the origin-edge cylinder by re-rooting.
    Saturation(Settings),
    /// Exact event probabilities on a small window.
    Oracle(Settings),
    /// Edge list of one sample or one model window.
    Dump(Settings),
}

fn main() -> ExitCode {
    let (kind, settings) = match Cli::parse().command {
        Command::Sample(s) => (ExperimentKind::Sample, s),
        Command::Patterns(s) => (ExperimentKind::Patterns, s),
        Command::RepetitiveCheck(s) => (ExperimentKind::RepetitiveCheck, s),
        Command::Singularity(s) => (ExperimentKind::Singularity, s),
        Command::Saturation(s) => (ExperimentKind::Saturation, s),
        Command::Oracle(s) => (ExperimentKind::Oracle, s),
        Command::Dump(s) => (ExperimentKind::Dump, s),
    };
    let result = settings
        .with_config_file()
        .and_then(|s| ExperimentConfig::resolve(kind, s))
        .and_then(|cfg| execute(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("percolab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
