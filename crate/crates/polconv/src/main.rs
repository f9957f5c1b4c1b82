use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use polconv::{run, Cli, Status, EXIT_VERIFICATION};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &argv, &mut out) {
        Ok(Status::Passed) => 0,
        Ok(Status::Failed) => EXIT_VERIFICATION,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
