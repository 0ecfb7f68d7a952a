//! `codedel`: experiment runner for uncoordinated multi-source delivery.
//!
//! Every run writes its table as CSV or JSON plus a manifest holding the
//! effective parameters, enough to replay it.

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("codedel: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
