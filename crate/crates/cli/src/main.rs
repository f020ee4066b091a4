//! `packing-forge`: build, bound and verify lattice sphere packings.
//!
//! Exit codes: 0 success, 1 bad arguments or unreadable input, 2 budget
//! exceeded, 3 verification failure.

mod args;
mod commands;
mod exit;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use exit::{Failure, Outcome};
use output::Output;

/// Caps the worker pool; unset means one worker per core.
const THREADS_VAR: &str = "PACKING_FORGE_THREADS";

fn configure_threads() -> Outcome {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot start {threads} worker threads: {e}")))
}

fn run(cli: &Cli) -> Outcome {
    configure_threads()?;
    let out = Output {
        format: cli.format,
        deterministic: cli.deterministic,
    };
    match &cli.command {
        Command::Build(a) => commands::build::run(a, &out, cli.seed),
        Command::Bounds(a) => commands::bounds::run(a, &out),
        Command::Verify(a) => commands::verify::run(a, &out, cli.seed),
        Command::Check(a) => commands::check::run(a, &out, cli.seed),
        Command::Bench(a) => commands::bench::run(a, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{f}");
            f.exit_code()
        }
    }
}
