//! `bemery`: eigenvalue queries, verification suite and figure data.

mod commands;
mod config;
mod verify;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use bemery_core::SpectralError;
use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "bemery", version, about = "First eigenvalues of drift Laplacians and Weber oscillators")]
pub struct Cli {
    /// JSON file with parameter values; flags on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the CSV or report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Eigenvalue tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, env = "BEMERY_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Neumann eigenvalue of u'' - a s u' on [-D/2, D/2].
    EigDrift {
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long = "D")]
        d: Option<f64>,
    },
    /// Dirichlet eigenvalue of w'' - b s² w on [-D/2, D/2].
    EigWeber {
        #[arg(long)]
        b: Option<f64>,
        #[arg(long = "D")]
        d: Option<f64>,
    },
    /// Run the invariant suite; exits with status 1 on any failure.
    Verify,
    /// Exact coefficients of the small-b series on the π-interval.
    Taylor {
        #[arg(long)]
        order: Option<usize>,
    },
    /// CSV of the Weber eigenvalue on the π-interval against its lower bounds.
    Figure1,
    /// CSV of the drift eigenvalue on the π-interval against its lower bounds and 2a.
    Figure2,
    /// CSV sweep of the capped-cylinder construction over cap radii.
    Sharpness {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long = "D")]
        d: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        r_list: Option<Vec<f64>>,
        #[arg(long)]
        delta_ratio: Option<f64>,
        #[arg(long)]
        grid_points: Option<usize>,
    },
    /// Basic and improved diameter bounds for a soliton with constant a.
    Diameter {
        #[arg(long)]
        a: Option<f64>,
    },
    /// CSV of the tabulated capped-cylinder profile and its Bakry–Emery eigenvalues.
    Profile {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long = "D")]
        d: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<f64>,
        #[arg(long)]
        grid_points: Option<usize>,
    },
}

pub const SHARPNESS_DEFAULTS: (usize, f64, f64, [f64; 3], f64) = (3, 1.0, PI, [0.2, 0.1, 0.05], 0.1);

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Solver(SpectralError),
    Verification(usize),
    Io(String),
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::InvalidProblem(m) | SpectralError::SpecInvalid(m) => Failure::Usage(m),
            other => Failure::Solver(other),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Solver(_) | Failure::Io(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Solver(e) => eprintln!("error: solver failed: {e}"),
                Failure::Verification(n) => eprintln!("error: {n} check(s) failed"),
                Failure::Io(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.exit_code())
        }
    }
}
