use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use secant_lab::cli::{cmd_analyze, cmd_catalog, cmd_reproduce, CmdOutput, OutputFormat};
use secant_lab::report::{AnalyzeOpts, Mode};
use secant_lab::terracini::EngineOpts;

/// Exact-arithmetic dimensions, defects and contact loci of higher secant
/// varieties of classical projective varieties.
#[derive(Parser)]
#[command(name = "secant-lab", version, about)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one variety: defect ledger, contact loci and bound checks.
    Analyze {
        /// Variety in the mini-language, e.g. "segre:3,4" or
        /// "scroll:1,1,20|project:2" (see `catalog`).
        spec: String,
        #[command(flatten)]
        flags: AnalyzeFlags,
    },
    /// Replay a golden example suite and compare against expected values.
    Reproduce {
        /// One of: severi, ksevi, scrolls, seg34, speculations.
        suite: String,
        /// Base seed for all random sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run in exact rational arithmetic instead of the prime field.
        #[arg(long)]
        exact: bool,
    },
    /// List the variety families, their constraints and dimension formulas.
    Catalog,
}

#[derive(Args)]
struct AnalyzeFlags {
    /// Ledger depth; defaults to the fill index k0 capped at 6.
    #[arg(long)]
    kmax: Option<usize>,
    /// Base seed for all random sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random trials per generic-rank computation.
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Run in exact rational arithmetic instead of the prime field.
    #[arg(long)]
    exact: bool,
    /// Skip the contact-locus pass.
    #[arg(long = "no-gamma", action = clap::ArgAction::SetTrue)]
    no_gamma: bool,
    /// Emit the canonical JSON report instead of the table.
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Emit the human-readable table (the default).
    #[arg(long)]
    table: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn deliver(out: CmdOutput, path: Option<PathBuf>) -> ExitCode {
    if let Some(path) = path {
        if out.code == 0 {
            if let Err(e) = std::fs::write(&path, &out.text) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return ExitCode::from(3);
            }
            return ExitCode::SUCCESS;
        }
    }
    let mut stream: Box<dyn Write> = if out.code == 0 {
        Box::new(std::io::stdout())
    } else {
        Box::new(std::io::stderr())
    };
    let _ = stream.write_all(out.text.as_bytes());
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    match args.command {
        Command::Analyze { spec, flags } => {
            let opts = AnalyzeOpts {
                mode: if flags.exact {
                    Mode::Rational
                } else {
                    Mode::PrimeField
                },
                engine: EngineOpts {
                    trials: flags.trials,
                    seed: flags.seed,
                    gamma: !flags.no_gamma,
                    kmax: flags.kmax,
                },
            };
            let format = if flags.json {
                OutputFormat::Json
            } else {
                OutputFormat::Table
            };
            deliver(cmd_analyze(&spec, &opts, format), flags.out)
        }
        Command::Reproduce { suite, seed, exact } => {
            deliver(cmd_reproduce(&suite, seed, exact), None)
        }
        Command::Catalog => deliver(cmd_catalog(), None),
    }
}
