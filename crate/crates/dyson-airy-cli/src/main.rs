//! `dyson-airy` command-line front end.
//!
//! Exit codes: 0 success, 2 usage, 3 numeric failure (including failed
//! criteria under `verify`), 4 I/O. Errors are one line on stderr.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::{execute, Run};
use error::CliError;
use output::{input_hash, write_json, RunManifest, Sink, SCHEMA_VERSION};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) => {
            let _ = e.print();
            return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
        Err(e) => {
            let first = e.to_string().lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments").trim_start_matches("error: ").to_string();
            eprintln!("{}", CliError::Usage(first).line());
            return ExitCode::from(2);
        }
    };
    match run(&cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    let workers = match cli.workers {
        Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| CliError::Numeric(format!("thread pool: {e}")))?;
    let mut sink = Sink::new(&cli.out_dir, cli.command.stem())?;
    let mut record = Run::default();
    let start = Instant::now();
    let result = pool.install(|| execute(&cli.command, &mut sink, &mut record));
    let manifest = RunManifest {
        schema: SCHEMA_VERSION,
        command: argv.to_vec(),
        config_hash: input_hash(&record.inputs),
        seed: record.seed,
        version: env!("CARGO_PKG_VERSION"),
        wall_seconds: start.elapsed().as_secs_f64(),
        workers,
        outputs: sink.written().iter().map(|p| p.display().to_string()).collect(),
        error: result.as_ref().err().map(CliError::line),
    };
    write_json(&sink.manifest_path(), &manifest)?;
    result
}
