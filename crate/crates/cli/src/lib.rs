//! Command-line front end for `qcr-core`.
//!
//! Exit statuses: 0 success, 1 a verification or certification failure,
//! 2 invalid arguments or input files, 3 an I/O failure.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod range;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, OUT_DIR_ENV};
pub use config::RunConfig;
pub use error::{exit, CliError, CliResult};

use commands::Io;

/// Parses `argv` and runs the selected command, returning the exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    exit::OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    exit::USAGE
                }
            };
        }
    };
    let out_dir = cli.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let mut io = Io { out, err };
    let result = match &cli.command {
        Command::Bounds(a) => commands::bounds(a, &out_dir, &mut io),
        Command::Verify(a) => commands::verify(a, &out_dir, &mut io),
        Command::Protocol(a) => commands::protocol(a, &mut io),
        Command::Optimize(a) => commands::optimize(a, &out_dir, &mut io),
        Command::Example(a) => commands::example(a, &out_dir, &mut io),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            e.exit_code()
        }
    }
}
