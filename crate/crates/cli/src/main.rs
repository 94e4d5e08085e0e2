mod args;
mod commands;
mod error;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use error::CliError;
use report::render;

fn write_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error worth reporting.
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (outcome, output) = match &cli.command {
        Command::Eval(a) => (commands::eval(a)?, &a.output),
        Command::Rank(a) => (commands::rank(a)?, &a.output),
        Command::Theorems(a) => (commands::theorems(a)?, &a.output),
        Command::Omega(a) => {
            let (table, plain) = commands::omega(a)?;
            match (table, a.format) {
                (Some(table), Some(format)) => write_stdout(&render(&[table], format, a.precision)),
                _ => write_stdout(&format!("{plain}\n")),
            }
            return Ok(());
        }
        Command::Sweep(a) => {
            let outcome = commands::sweep(a)?;
            write_stdout(&render(&outcome.tables, a.format, a.precision));
            return Ok(());
        }
    };
    write_stdout(&render(&outcome.tables, output.format, output.precision));
    outcome.failure.map_or(Ok(()), Err)
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
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
