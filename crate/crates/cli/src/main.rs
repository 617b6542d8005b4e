//! `nvs`: classification, construction and verification of multiplicative
//! near-vector spaces.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! malformed input. Nothing is written to stdout unless the command
//! completes.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nvs_core::grid::DEFAULT_TOLERANCE;
use nvs_core::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "nvs",
    version,
    about = "Multiplicative near-vector spaces over finite fields, R, C and Dickson(9)"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Relative tolerance for real and complex comparisons [default: 1e-9].
    /// Overrides a tolerance given in a spec file.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest space enumerated by exhaustive checks.
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classes of exponents inducing the same addition on GF(p^n).
    Classify { p: u64, n: u32 },
    /// Multiplicative automorphisms of a finite base, e.g. `GF(2^3)` or `dickson9`.
    Autos { base: String },
    /// Analyses of a space spec file.
    Space {
        file: PathBuf,
        #[arg(value_enum)]
        action: SpaceAction,
    },
    /// Complexify a real exponent spec `{"T": [...], "S": [...], "conj": bool}`.
    Complexify {
        file: PathBuf,
        /// Use the conjugate family.
        #[arg(long)]
        conj: bool,
    },
    /// Axiom checks for a base: `GF(p^n)`, `R`, `C` or `dickson9`.
    CheckBase { base: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceAction {
    Qk,
    Decompose,
    Axioms,
    Multiplicative,
    OracleCompare,
}

impl Cli {
    pub fn tolerance(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOLERANCE)
    }

    pub fn config(&self) -> Config {
        let mut cfg = Config {
            seed: self.seed,
            ..Config::default()
        };
        if let Some(b) = self.bound {
            cfg.bounds.membership = b;
        }
        cfg
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.tol.filter(|t| !(*t > 0.0 && t.is_finite())) {
        eprintln!("error: --tol must be a positive number, got {t}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.pass {
                ExitCode::SUCCESS
            } else {
                for msg in &out.diagnostics {
                    eprintln!("{msg}");
                }
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
