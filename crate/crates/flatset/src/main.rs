use std::process::ExitCode;

use clap::Parser;
use flatset::args::Cli;
use flatset::output::emit;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match flatset::run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&outcome.text, cli.global.out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        for f in &outcome.failures {
            eprintln!("diagnostic failed: {f}");
        }
        ExitCode::from(1)
    }
}
