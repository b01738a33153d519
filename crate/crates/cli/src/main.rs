use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use cpt_kit::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut log = io::stderr();
    let result = run(&cli.command, &mut out, &mut log);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
