//! The `gvfan` command-line tool: argument parsing, caching and JSON reports.

pub mod args;
pub mod cache;
pub mod error;
pub mod io;
pub mod run;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::Cli;
pub use error::CliError;
pub use run::execute;

/// Parses `argv` into a config, mapping clap failures to usage errors.
pub fn parse_args<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

/// Full run: parse, execute, print. Returns the exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(bytes) => {
            if cli.global.output.is_none() {
                let _ = std::io::stdout().write_all(&bytes);
            }
            0
        }
        Err(e) => {
            let body = error::ErrorReport {
                tool: "gvfan",
                version: env!("CARGO_PKG_VERSION"),
                error: error::ErrorBody {
                    kind: e.kind(),
                    message: e.message(),
                },
            };
            let _ = std::io::stdout().write_all(&io::to_pretty(&body));
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
