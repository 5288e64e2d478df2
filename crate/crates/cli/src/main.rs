use std::process::ExitCode;

use clap::Parser;

use wwcat_cli::app::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    println!("{}", outcome.stdout);
    if let Some(msg) = outcome.stderr {
        eprintln!("{msg}");
    }
    ExitCode::from(outcome.exit.code())
}
