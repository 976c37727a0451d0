use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use divmatch_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            std::io::stdout().flush().ok();
            ExitCode::from(out.exit_code as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
