use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use synthdata_cli::config::RunConfig;
use synthdata_cli::{evaluate, generate, train_gan_command, CliError, Outcome};

/// Synthetic tabular data: generate, train a GAN, evaluate fidelity.
#[derive(Parser)]
#[command(name = "synthdata", version)]
struct Cli {
    /// Overrides the seed in the config (and the scatter-sample seed of `evaluate`).
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a dataset from a run config (or a previous run's manifest).
    Generate {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
    },
    /// Train a GAN on the config's input and write the model and loss log.
    TrainGan {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
    },
    /// Compare a synthetic dataset with a real one and write the report and figures.
    Evaluate {
        #[arg(long, value_name = "PATH")]
        real: PathBuf,
        #[arg(long, value_name = "PATH")]
        synth: PathBuf,
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
}

fn load(path: &Path, seed: Option<u64>) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(path)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Generate { config } => generate(&load(&config, cli.seed)?),
        Command::TrainGan { config } => train_gan_command(&load(&config, cli.seed)?),
        Command::Evaluate { real, synth, out } => evaluate(&real, &synth, &out, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string();
            let first = first
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ");
            eprintln!("{}", CliError::Config(first.to_string()).render());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(outcome) => {
            for w in outcome.warnings {
                eprintln!("warning: {w}");
            }
            for n in outcome.notes {
                println!("{n}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.render());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
