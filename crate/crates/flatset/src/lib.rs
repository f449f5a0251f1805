//! Command-line front end for `flatset-core`.
//!
//! Exit status: 0 on success, 1 when a diagnostic fails, 2 on invalid
//! input. Reports are JSON, curves and sweeps CSV; floats are written with
//! 17 significant digits so reruns are byte-identical.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

use args::{Cli, Command, Format};
pub use commands::Outcome;
use error::CliResult;

/// Runs one subcommand and returns the text it would emit.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let fmt = |default| cli.global.format.unwrap_or(default);
    match &cli.command {
        Command::Solve1d(a) => commands::solve1d::run(a, fmt(Format::Json)),
        Command::Radial(a) => commands::radial::run(a, fmt(Format::Json)),
        Command::Grid(a) => commands::grid::run(a, fmt(Format::Json)),
        Command::Sweep(a) => commands::sweep::run(a, fmt(Format::Csv)),
        Command::Rearrange(a) => commands::rearrange::run(a, fmt(Format::Json), cli.global.seed),
        Command::Verify(a) => commands::verify::run(a, fmt(Format::Json)),
    }
}
