//! Command-line front end for `jfourier`.
//!
//! ```text
//! jfourier eval bessel-j --nu 0.5 --z 1.7 --method integral
//! jfourier compare neumann --seq geometric:0.6 --methods direct,integral --nu 0.5 --z 2
//! jfourier bench bessel-j --repetitions 5 --out bench.json
//! ```
//!
//! Exit codes: 0 on success, 1 when any point fails numerically (or a
//! comparison exceeds `--tol`), 2 on usage errors.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod functions;
pub mod grid;
pub mod report;

pub use args::Cli;
pub use error::CliError;

use args::Command;

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Eval(a) => commands::cmd_eval(a),
        Command::Compare(a) => commands::cmd_compare(a),
        Command::Bench(a) => commands::cmd_bench(a),
    }
}
