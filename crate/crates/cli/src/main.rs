use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use laf_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("laf: error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = outcome.report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("laf: error: {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    eprintln!("laf: {} finished in {:.3} s", outcome.report.command, start.elapsed().as_secs_f64());
    ExitCode::from(outcome.exit_code as u8)
}
