//! Command-line front end for the `vilenkin` crate.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage or
//! configuration errors, 3 for I/O failures.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::commands::{RatesArgs, TheoremArgs};
use crate::config::Format;
pub use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "vilenkin", version, about = "Approximation experiments on bounded Vilenkin groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check kernel identities or an approximation inequality.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Fit the decay exponent of `‖T_{M_s} f - f‖_p` on the Walsh group.
    Rates {
        /// Lipschitz order of the test function.
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value = "const")]
        weights: String,
        /// Walsh depth.
        #[arg(long = "L", default_value_t = 14)]
        level: usize,
        #[arg(long, default_value = "1,2")]
        p: String,
        #[arg(long, default_value_t = 0.15)]
        tol: f64,
        /// Expected slope; defaults to the predicted exponent.
        #[arg(long, allow_negative_numbers = true)]
        expect: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Analyze a grid document or synthesize a spectrum document.
    Transform {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyTarget {
    Kernels {
        /// Group, e.g. `m=2,3,4;L=3`.
        #[arg(long)]
        group: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    Theorem {
        /// `1`, `2`, `3` or `fejer`.
        #[arg(long)]
        id: String,
        #[arg(long)]
        group: String,
        /// `const`, `pow:<g>`, `logpow:<b>` or `custom:<q0,q1,...>`.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        /// Test functions: `random:<seed>`, `lip:<alpha>`, `char:<k>`.
        #[arg(long = "f", required = true, num_args = 1..)]
        functions: Vec<String>,
        #[arg(long, default_value = "1,2")]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

/// Runs a parsed command and returns whether all checks passed.
pub fn execute(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Verify { target: VerifyTarget::Kernels { group, out, format } } => {
            commands::verify_kernels(group, out.as_deref(), *format)
        }
        Command::Verify {
            target: VerifyTarget::Theorem { id, group, weights, functions, p, out, format },
        } => commands::verify_theorem(&TheoremArgs {
            id,
            group,
            weights: weights.as_deref(),
            functions,
            p,
            out: out.as_deref(),
            format: *format,
        }),
        Command::Rates { alpha, weights, level, p, tol, expect, out } => commands::rates(&RatesArgs {
            alpha: *alpha,
            weights,
            level: *level,
            p,
            tol: *tol,
            expect: *expect,
            out: out.as_deref(),
        }),
        Command::Transform { input, out } => commands::transform(input, out.as_deref()),
    }
}

/// Parses `args`, runs, and maps the outcome to an exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
