use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use qthermo::experiments::{any_failed, report, run_named, ExperimentConfig, Format, EXPERIMENTS};

#[derive(Parser)]
#[command(name = "qthermo", version, about = "Seeded work and energy experiments on finite quantum systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment, or `all`, and write the report.
    Run(RunArgs),
    /// List the registered experiments.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// JSON or TOML config file; command-line options override its fields.
    #[arg(long, required_unless_present = "experiment")]
    config: Option<PathBuf>,
    /// Experiment name, or `all`.
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    grid: Option<usize>,
    /// Report destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
}

fn execute(args: RunArgs) -> anyhow::Result<bool> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::read(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(name) = args.experiment {
        config.experiment = name;
    }
    if config.experiment.is_empty() {
        bail!("no experiment named; pass --experiment or set it in the config");
    }
    config.dim = args.dim.or(config.dim);
    config.seed = args.seed.unwrap_or(config.seed);
    config.restarts = args.restarts.unwrap_or(config.restarts);
    config.samples = args.samples.unwrap_or(config.samples);
    config.grid = args.grid.or(config.grid);
    if let Some(out) = &args.out {
        config.output_path = Some(out.display().to_string());
    }
    let format: Format = args.format.parse()?;

    let reports = run_named(&config)?;
    let text = report(&reports, format)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {path}"))?,
        None => print!("{text}"),
    }
    for r in &reports {
        eprintln!("{:<30} {}", r.experiment, r.verdict.as_str());
    }
    Ok(!any_failed(&reports))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            for name in EXPERIMENTS {
                println!("{name}");
            }
            ExitCode::SUCCESS
        }
        Command::Run(args) => match execute(args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}
