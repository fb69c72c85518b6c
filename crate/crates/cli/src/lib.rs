//! Command-line front end for `adiasweep-core`.
//!
//! Subcommands `gap`, `evolve`, `scan` and `optimize-alpha` write CSV tables
//! (header first, `#` comment lines, floats as `%.12g`). Exit status is 0 on
//! success, 1 for bad arguments or unwritable output, 2 for numerical
//! failures.

pub mod args;
pub mod commands;
pub mod config;
pub mod exec;
pub mod format;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{CommandError, EXIT_USAGE};
use crate::exec::RayonExecutor;

pub use adiasweep_core;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args = match config::expand_args(args.into_iter().map(Into::into).collect()) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(&cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command, stdout: &mut dyn Write) -> Result<(), CommandError> {
    let executor = || RayonExecutor::from_env().map_err(|e| CommandError::Usage(e.to_string()));
    match command {
        Command::Gap(a) => commands::gap(a, stdout),
        Command::Evolve(a) => commands::evolve_one(a, stdout),
        Command::Scan(a) => commands::scan(a, &executor()?, stdout),
        Command::OptimizeAlpha(a) => commands::optimize(a, &executor()?, stdout),
    }
}
