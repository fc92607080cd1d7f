use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use galois_cli::{execute, limits_from_env, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = limits_from_env().and_then(|limits| execute(&cli, limits));
    match result {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(outcome.text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("galois: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
