use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod parse;

use commands::Failure;

/// Analyze and construct operator pairs with AB = λBA.
#[derive(Debug, Parser)]
#[command(name = "lamcom", version, about)]
struct Cli {
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named realization and emit its pair JSON.
    Generate(GenerateArgs),
    /// Detect the factor of a pair and check it against every structural constraint.
    Analyze {
        /// Pair JSON file.
        pair: PathBuf,
    },
    /// Construct the unitary U with AB = UBA for a Hermitian pair.
    Intertwine {
        pair: PathBuf,
    },
    /// Basis of {B : AB = λBA} for a normal matrix A.
    Commutant {
        /// Matrix JSON file.
        matrix: PathBuf,
        /// Factor as "re,im".
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        lambda: num_complex::Complex64,
    },
    /// Spectral projection of a Hermitian matrix onto [a, b] by Stone's formula.
    Stone(StoneArgs),
    /// Run every property with seeded trials.
    Suite {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    ClockShift,
    CyclicShiftDiag,
    NilpotentDiag,
    Jordan2,
    Jordan3,
    PauliXy,
    PauliIntertwiner,
    UqSl2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Generator {
    E,
    F,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Dimension, or the highest weight for uq-sl2.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    lambda: Option<num_complex::Complex64>,
    /// Diagonal of B for nilpotent-diag, as "re,im;re,im;...".
    #[arg(long, allow_hyphen_values = true)]
    betas: Option<String>,
    #[arg(long)]
    pivot: Option<usize>,
    /// Set β_pivot = λ·β_{pivot−1} instead of validating it.
    #[arg(long)]
    solve: bool,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    x: Option<num_complex::Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    y: Option<num_complex::Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    z: Option<num_complex::Complex64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    q: Option<num_complex::Complex64>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    eps: i8,
    #[arg(long, value_enum, default_value_t = Generator::E)]
    generator: Generator,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Trapezoid,
    GaussLegendre,
}

#[derive(Debug, Args)]
struct StoneArgs {
    matrix: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    /// Quadrature points; defaults to a spacing of ε/5.
    #[arg(long)]
    nodes: Option<usize>,
    #[arg(long, value_enum, default_value_t = Rule::Trapezoid)]
    rule: Rule,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
