use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod record;
mod signal;

use config::ExperimentConfig;
use record::Format;

#[derive(Parser, Debug)]
#[command(
    name = "bgft",
    version,
    about = "Spectral analysis, filtering and sampling of directed random-walk diffusion"
)]
struct Cli {
    #[command(flatten)]
    config: ExperimentConfig,

    /// Output format for records.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Asymmetry, non-normality, eigenvector conditioning and reversibility of P.
    Indices,
    /// Apply the heat filter h(λ) = exp(-τ(1 - λ)) and write H x.
    Filter(SignalArgs),
    /// Iterate x_{s+1} = P x_s and tabulate ‖x_s‖₂ against cond(V)·ρ^s·‖x_0‖₂.
    Diffuse {
        #[command(flatten)]
        signal: SignalArgs,
        /// Number of diffusion steps.
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
    },
    /// Seeded bandlimited sampling and least-squares reconstruction.
    Reconstruct {
        #[arg(long, value_enum, default_value_t = Sampling::Random)]
        sampling: Sampling,
    },
    /// The three-graph summary table (undirected, directed, perturbed cycle).
    Table1,
}

#[derive(Args, Debug)]
struct SignalArgs {
    /// Signal file with one `re im` pair per line; a seeded random signal if omitted.
    #[arg(long)]
    signal: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Sampling {
    Random,
    Greedy,
}

fn run(cli: &Cli) -> Result<String> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Indices => Ok(cli.format.render(&[commands::indices(cfg)?])),
        Command::Filter(args) => {
            let x = signal::input(args.signal.as_deref(), cfg)?;
            let (y, log) = commands::filter(cfg, &x)?;
            eprintln!("{log}");
            Ok(signal::render(&y))
        }
        Command::Diffuse { signal: args, t } => {
            let x = signal::input(args.signal.as_deref(), cfg)?;
            Ok(cli.format.render(&commands::diffuse(cfg, &x, *t)?))
        }
        Command::Reconstruct { sampling } => {
            Ok(cli.format.render(&[commands::reconstruct(cfg, *sampling == Sampling::Greedy)?]))
        }
        Command::Table1 => Ok(cli.format.render(&commands::table1(cfg)?)),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|text| emit(cli.out.as_ref(), &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
