use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use froblab::rational::ExactRational;

#[derive(Debug, Parser)]
#[command(name = "froblab", version, about = "Frobenius roots, F-thresholds and test ideals over F_p")]
pub struct Cli {
    /// Maximum number of S-pairs per Gröbner basis (FROBLAB_BUDGET takes precedence).
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Emit a JSON report.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit human-readable text.
    #[arg(long, global = true)]
    pub text: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// e-th root a^[1/p^e] of an ideal.
    EthRoot {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// ν(p^e) = max { r | a^r ⊄ b^[p^e] }.
    Nu {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        e: u32,
    },
    /// Bracket on the F-pure threshold of a homogeneous ideal.
    Fpt {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long, default_value_t = 3)]
        emax: u32,
    },
    /// Generalized test ideal τ(λ•a).
    TestIdeal {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        lambda: ExactRational,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Jumps of τ(λ•a) on a rational grid.
    Jumps {
        #[arg(long)]
        ideal: PathBuf,
        #[arg(long)]
        lo: ExactRational,
        #[arg(long)]
        hi: ExactRational,
        #[arg(long)]
        denom: u64,
        #[command(flatten)]
        policy: PolicyArgs,
    },
    /// Ideal of t-minors of a generic m×n matrix.
    Minors {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        p: u64,
        /// Write the ideal file here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The F-pure threshold formula min (n-k)(m-k)/(t-k).
    MsvFpt {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        t: usize,
    },
    /// Check computed test ideals of maximal minors against the closed form.
    VerifyMain {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        p: u64,
        /// Largest denominator of the λ grid.
        #[arg(long)]
        denom: u64,
        /// Largest λ of the grid (defaults to fpt + 2).
        #[arg(long)]
        lmax: Option<ExactRational>,
        #[command(flatten)]
        policy: PolicyArgs,
        /// Also bracket the F-pure threshold with ν up to this exponent.
        #[arg(long)]
        nu_e: Option<u32>,
    },
    /// Check the lex witness Δ/η for maximal minors.
    Witness {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Randomized e-th root property suite (uses --seed).
    Selfcheck {
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Characteristics to draw from.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        /// Root exponents to draw from.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        exponents: Vec<u32>,
    },
}

#[derive(Debug, Args)]
pub struct Shape {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct PolicyArgs {
    #[arg(long, default_value_t = 3)]
    pub emax: u32,
    /// Consecutive equalities required to accept an uncertified chain.
    #[arg(long, default_value_t = 1)]
    pub confirm: u32,
    /// Only accept certified chain members.
    #[arg(long)]
    pub certify: bool,
}
