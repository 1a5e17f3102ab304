use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    pigeon_cli::run(pigeon_cli::Cli::parse())
}
