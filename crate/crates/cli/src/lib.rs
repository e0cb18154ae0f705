//! Command-line front end: JSON reports for disks, verification and
//! extremal evaluation, CSV and SVG for region boundaries.
//!
//! Exit codes: 0 success, 1 verification failure, 2 infeasible instance,
//! 64 usage error.

// `!(x < 1.0)` is used on purpose: it rejects NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod parse;
pub mod report;
pub mod svg;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use report::Outcome;

use args::{Cli, Command};

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(commands::EXIT_USAGE, text),
            };
        }
    };
    let result = match &cli.command {
        Command::Disk(a) => commands::disk(a),
        Command::Region(a) => commands::region(a),
        Command::Verify(a) => commands::verify(a),
        Command::Eval(a) => commands::eval(a),
        Command::Peschl(a) => commands::peschl(a),
    };
    result.unwrap_or_else(commands::Failure::into_outcome)
}
