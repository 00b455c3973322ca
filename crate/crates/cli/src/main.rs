//! `pnb`: enumerate, construct and verify bundles with short resolutions on
//! projective space.
//!
//! Payloads go to stdout. Domain errors exit with status 1 and print
//! `{"error": <code>, "detail": <message>}` to stderr; usage errors exit 2.
//! `check` still prints its full report when some matrix is not a bundle.

mod commands;

use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use pn_bundles::polyalg::DEFAULT_PRIME;
use pn_bundles::IntSeq;

#[derive(Debug, Parser)]
#[command(
    name = "pnb",
    version,
    about = "Betti numbers, Hilbert functions and presentation matrices of bundles on P^n"
)]
pub struct Cli {
    /// Output format; each command accepts a subset.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Prime field characteristic for matrices.
    #[arg(long, global = true, env = "PNB_PRIME", default_value_t = DEFAULT_PRIME as u64)]
    pub prime: u64,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads for batch commands (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bundle sequences of given rank and degree, normalized Hilbert functions
    /// up to a regularity bound, or admissible Betti pairs with given c1.
    Enumerate(EnumerateArgs),
    /// A Hilbert function with its minimal Betti pair and normalization.
    Hilbert(HilbertArgs),
    /// The lattice of Betti pairs with a fixed Hilbert function.
    Lattice(LatticeArgs),
    /// An explicit or random presentation matrix for a Betti pair.
    Present(PresentArgs),
    /// Verify and minimize presentation matrices read from JSON files.
    Check(CheckArgs),
    /// Sample the deformation family between two comparable Betti pairs.
    Deform(DeformArgs),
    /// Whether a Betti pair is admissible.
    Admissible(AdmissibleArgs),
}

fn parse_seq(s: &str) -> Result<IntSeq, String> {
    s.parse::<IntSeq>().map_err(|e| e.to_string())
}

/// An ordered list of integers in caret notation.
#[derive(Debug, Clone)]
pub struct SeqList(pub Vec<i64>);

fn parse_list(s: &str) -> Result<SeqList, String> {
    pn_bundles::seq::parse_caret_list(s)
        .map(SeqList)
        .map_err(|e| e.to_string())
}

/// A Betti pair written `a:b`, each side a caret list.
#[derive(Debug, Clone)]
pub struct PairSpec {
    pub a: IntSeq,
    pub b: IntSeq,
}

fn parse_pair(s: &str) -> Result<PairSpec, String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    Ok(PairSpec {
        a: parse_seq(a)?,
        b: parse_seq(b)?,
    })
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Ambient dimension n of P^n.
    #[arg(long)]
    pub n: u32,
    /// Source twists, e.g. `2` or `1^3,4`. Empty for split bundles.
    #[arg(long, value_parser = parse_seq, allow_hyphen_values = true, default_value = "")]
    pub a: IntSeq,
    /// Target twists, e.g. `0^3,1^2` or `-1^5`.
    #[arg(long, value_parser = parse_seq, allow_hyphen_values = true)]
    pub b: IntSeq,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub rank: i64,
    /// Degree of the bundle sequence.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "max_reg")]
    pub degree: Option<i64>,
    /// Regularity bound.
    #[arg(long, allow_hyphen_values = true)]
    pub max_reg: Option<i64>,
    /// First Chern class; switches to admissible Betti pairs (needs --max-reg).
    #[arg(long, allow_hyphen_values = true, requires = "max_reg")]
    pub c1: Option<i64>,
}

/// A Hilbert function given by its bundle sequence or by a Betti pair.
#[derive(Debug, Args)]
pub struct HilbertSpec {
    #[arg(long)]
    pub n: u32,
    /// Bundle sequence in order, e.g. `5,4` or `1^5,4`.
    #[arg(long, value_parser = parse_list, conflicts_with_all = ["a", "b"])]
    pub seq: Option<SeqList>,
    /// First position of the sequence (default: the normalized anchor).
    #[arg(long, allow_hyphen_values = true, requires = "seq")]
    pub anchor: Option<i64>,
    /// Source twists of a Betti pair with this Hilbert function.
    #[arg(long, value_parser = parse_seq, allow_hyphen_values = true, requires = "b")]
    pub a: Option<IntSeq>,
    /// Target twists of a Betti pair with this Hilbert function.
    #[arg(long, value_parser = parse_seq, allow_hyphen_values = true)]
    pub b: Option<IntSeq>,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub spec: HilbertSpec,
    /// First twist of the value table (default: two below the anchor).
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<i64>,
    /// Last twist of the value table (default: two above the sequence).
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<i64>,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub spec: HilbertSpec,
    /// Regularity bound d.
    #[arg(long, allow_hyphen_values = true)]
    pub max_reg: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Explicit,
    Random,
}

#[derive(Debug, Args)]
pub struct PresentArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value = "explicit")]
    pub mode: Mode,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Matrix JSON files; `-` reads standard input.
    #[arg(required = true)]
    pub files: Vec<String>,
    /// Judge semistability by `b_1 >= μ` instead of `b_1 >= -μ`.
    #[arg(long)]
    pub as_printed: bool,
}

#[derive(Debug, Args)]
pub struct DeformArgs {
    #[arg(long)]
    pub n: u32,
    /// The generalization, as `a:b`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub small: PairSpec,
    /// The specialization `small + c`, as `a:b`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub big: PairSpec,
    /// Number of random nonzero parameters t to sample.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct AdmissibleArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// Report invariants along with the verdict.
    #[arg(long)]
    pub details: bool,
    /// Judge semistability by `b_1 >= μ` instead of `b_1 >= -μ`.
    #[arg(long)]
    pub as_printed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(commands::CliError::Usage(msg)) => Cli::command()
            .error(clap::error::ErrorKind::ArgumentConflict, msg)
            .exit(),
        Err(e) => {
            if let commands::CliError::NotABundle { payload, .. } = &e {
                print!("{payload}");
            }
            eprintln!("{}", e.to_json());
            ExitCode::from(1)
        }
    }
}
