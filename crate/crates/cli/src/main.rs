mod args;
mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use report::{Failure, EXIT_USAGE};

/// Environment variable holding the default worker thread count.
const THREADS_VAR: &str = "SINGINT_THREADS";

fn configure_threads() -> Result<(), Failure> {
    let Ok(text) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = text
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{THREADS_VAR}={text:?} is not a thread count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Verify(a) => commands::run_verify(a),
        Command::Sweep(a) => commands::run_sweep(a),
        Command::Decompose(a) => commands::run_decompose(a),
        Command::PoleProbe(a) => commands::run_pole_probe(a),
        Command::Dcov(a) => commands::run_dcov(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
