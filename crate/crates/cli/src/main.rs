use std::process::ExitCode;

use ball_interp_cli::{run, Cli};
use clap::Parser;

fn main() -> ExitCode {
    ExitCode::from(run(&Cli::parse()))
}
