use clap::{Parser, Subcommand, ValueEnum};

use casimir_core::casimir::DEFAULT_L_MAX;

/// Casimir energy of a Dirichlet scalar field on a spherical shell.
///
/// Results go to stdout as JSON (or CSV for the energy table). Set
/// CASIMIR_LOG=error|warn|info|debug for diagnostics on stderr.
///
/// Exit codes: 0 success, 1 verification failure, 2 invalid usage,
/// 3 a quadrature missed its tolerance (output is still written).
#[derive(Debug, Parser)]
#[command(name = "casimir", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total energy, force and the per-l table.
    Energy {
        /// Shell radius a.
        #[arg(long, allow_negative_numbers = true)]
        radius: f64,
        /// Largest l summed exactly (10..=60); the rest uses the asymptotic tail.
        #[arg(long, default_value_t = DEFAULT_L_MAX)]
        lmax: u32,
        /// Relative quadrature tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Zeros of the spherical Bessel function j_l and the mode frequencies.
    Zeros {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        count: u32,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        radius: f64,
    },
    /// Modified Bessel functions I_nu and K_nu for half-integer nu.
    Bessel {
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
    },
    /// Energy contribution of a single angular momentum l.
    Perl {
        #[arg(long)]
        l: u32,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Run the built-in verification suite.
    Verify {
        /// Skip the full-resolution total energy.
        #[arg(long)]
        fast: bool,
        /// Corrupt one measurement; the suite must then fail.
        #[arg(long, hide = true)]
        perturb: bool,
    },
}
