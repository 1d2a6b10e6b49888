use std::process::ExitCode;

use clap::Parser;
use orum_cli::Cli;

fn main() -> ExitCode {
    match orum_cli::run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
