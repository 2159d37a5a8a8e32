use std::process::ExitCode;

use clap::Parser;
use hermitian_core::cli::{run, RunConfig};
use hermitian_core::Error;

fn main() -> ExitCode {
    let config = RunConfig::parse();
    match run(&config, &mut std::io::stdout().lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e @ Error::InvalidConfig(_)) => {
            eprintln!("usage error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
