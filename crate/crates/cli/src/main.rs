mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Partition(a) => commands::partition(a),
        Command::Spectrum(a) => commands::spectrum(a),
        Command::DanglingCensus(a) => commands::dangling_census(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::OverfitBench(a) => commands::overfit_bench(a),
        Command::CorecutTable(a) => commands::corecut_table(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
