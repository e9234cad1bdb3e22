use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use supertriple::operators::OperatorKind;
use supertriple::Rational;

#[derive(Debug, Parser)]
#[command(name = "supertriple", version, about = "Exact checks and computations for δ-Jordan Lie supertriple systems")]
pub struct Cli {
    /// Print a machine-readable JSON report instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include basis matrices and cocycle representatives in human output.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the grading, skew, cyclic and fundamental identities.
    Verify { system: PathBuf },
    /// Dimensions (and bases) of derivation-type operator spaces.
    Spaces {
        system: PathBuf,
        /// der, qder, gder, centroid, qc, zder or center; all when omitted.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<OperatorKind>,
        /// Twist exponent; both 0 and 1 when omitted.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1))]
        k: Option<u32>,
    },
    /// Inclusion and closure properties among the operator spaces.
    Theorems { system: PathBuf },
    /// Check the representation identities of a module.
    RepCheck {
        system: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Build the semidirect sum with a representation and write it out.
    Semidirect {
        system: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Cocycles, coboundaries and cohomology of one arity, both degrees.
    Cohomology {
        system: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        n: u8,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Check that the low-degree coboundaries square to zero.
    ComplexCheck {
        system: PathBuf,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Formal deformations.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// Nijenhuis operators and the deformations they generate.
    #[command(subcommand)]
    Nijenhuis(NijenhuisCommand),
    /// Random valid systems pushed through every check.
    Selftest {
        /// Seed for the random system generator.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random valid systems to draw.
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Largest dimension drawn.
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..=4))]
        max_dim: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeformCommand {
    /// Check the deformation equation order by order.
    Check { file: PathBuf },
    /// Decide whether two infinitesimal deformations are equivalent.
    Equiv { system: PathBuf, f1: PathBuf, f1p: PathBuf },
    /// Even third cohomology, the obstruction to rigidity.
    Rigidity { system: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum NijenhuisCommand {
    /// Check a Nijenhuis operator and the trivial deformation it generates.
    Check {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = parse_rational, default_value = "1,-1,2,1/2")]
        lambdas: Vec<Rational>,
    },
}

/// A representation file, or the adjoint representation (the default).
#[derive(Debug, Args)]
pub struct RepArgs {
    pub rep: Option<PathBuf>,
    #[arg(long, conflicts_with = "rep")]
    pub adjoint: bool,
}

fn parse_kind(s: &str) -> Result<OperatorKind, String> {
    s.parse().map_err(|e: supertriple::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    supertriple::linalg::rational::parse(s.trim()).map_err(|e| e.to_string())
}
