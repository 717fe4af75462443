use std::process::ExitCode;

use bohr_cli::{run, RunConfig};
use clap::Parser;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(&config) {
        Ok(outcome) => {
            println!("{} {}", outcome.table.status(), outcome.path.display());
            if let Some(msg) = outcome.message {
                eprintln!("{msg}");
            }
            ExitCode::from(outcome.exit_code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
