//! `dcrnp`: generate instances, solve them, check solutions, compare the
//! heuristics and run benchmark batches.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 infeasible instance,
//! 3 verification failure.

use dcrnp_cli::commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "dcrnp", version, about = "Delay-constrained relay node placement")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a random instance.
    Gen {
        #[arg(long = "sensors", short = 'n')]
        sensors: usize,
        #[arg(long = "candidates", short = 'm')]
        candidates: usize,
        #[arg(long, default_value_t = 100.0)]
        field: f64,
        /// Sensor radius.
        #[arg(long = "r")]
        r: f64,
        /// Relay radius; defaults to the sensor radius.
        #[arg(long = "R")]
        big_r: Option<f64>,
        #[arg(long, default_value_t = 4)]
        delta: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance and write a solution file.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Sca)]
        algo: Algo,
        /// Largest subset size the oracle may try.
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against its instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Run both heuristics (and the oracle when small enough) on one instance.
    Compare {
        instance: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Run a benchmark batch and write CSV and plot data.
    Bench {
        /// TOML experiment config; the preset is used when omitted.
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Preset::Desk)]
        preset: Preset,
        /// Overrides the config's base seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Algo {
    Sca,
    Sptirp,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    Desk,
    Full,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Gen {
            sensors,
            candidates,
            field,
            r,
            big_r,
            delta,
            seed,
            out,
        } => commands::gen(
            sensors,
            candidates,
            field,
            r,
            big_r.unwrap_or(r),
            delta,
            seed,
            out.as_deref(),
        ),
        Command::Solve {
            instance,
            algo,
            limit,
            out,
        } => {
            let algo = match algo {
                Algo::Sca => dcrnp::Algorithm::Sca,
                Algo::Sptirp => dcrnp::Algorithm::Sptirp,
                Algo::Oracle => dcrnp::Algorithm::Oracle,
            };
            commands::solve(&instance, algo, limit, out.as_deref())
        }
        Command::Verify { instance, solution } => commands::verify(&instance, &solution),
        Command::Compare { instance, limit } => commands::compare(&instance, limit),
        Command::Bench {
            config,
            preset,
            seed,
            out,
        } => {
            let preset = match preset {
                Preset::Desk => dcrnp::bench::ExperimentConfig::desk(),
                Preset::Full => dcrnp::bench::ExperimentConfig::full(),
            };
            commands::bench(config.as_deref(), preset, seed, &out)
        }
    };
    match result {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
