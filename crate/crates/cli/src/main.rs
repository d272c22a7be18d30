//! `kh3`: compute, verify and sweep Khovanov homology of closed 3-braids.

mod compute;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use kh3::MurasugiClass;

/// Exit code for unparsable words or specs (clap also uses 2 for bad flags).
pub const EXIT_PARSE: u8 = 2;
/// Exit code when the cube of resolutions disagrees with the pipeline.
pub const EXIT_ORACLE: u8 = 3;
/// Exit code when a verified claim fails.
pub const EXIT_CLAIM: u8 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "kh3",
    version,
    about = "Khovanov and Bar-Natan homology of closed 3-braids"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology of one braid closure.
    Compute(ComputeArgs),
    /// Check a family of closed-form claims over a parameter grid.
    Verify(VerifyArgs),
    /// Compute every word of a file, one JSON file per word plus summary.csv.
    Sweep(SweepArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
pub enum Ring {
    Z,
    Q,
    F2,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Table,
    Json,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["word", "class"])))]
pub struct ComputeArgs {
    /// Braid word over a, A (= a⁻¹), b, B; `a^3` style powers allowed.
    #[arg(long)]
    pub word: Option<String>,
    /// Murasugi normal form class, omega0 .. omega6.
    #[arg(long, value_parser = parse_class)]
    pub class: Option<MurasugiClass>,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub k: i64,
    /// Exponent for omega4 / omega5.
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Comma-separated exponents n1,m1,...,nj,mj for omega6.
    #[arg(long, value_delimiter = ',')]
    pub alt: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Ring::Z, ignore_case = true)]
    pub ring: Ring,
    #[arg(long)]
    pub reduced: bool,
    #[arg(long, value_enum, default_value_t = Output::Table)]
    pub output: Output,
    /// Also run the cube of resolutions and compare integral homology.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Torus,
    Omega4,
    Omega5,
    Omega6,
    Torsion,
    Knight,
    Oracle,
    Fixtures,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GridName {
    Default,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, value_enum, default_value_t = GridName::Default)]
    pub grid: GridName,
    /// Upper bound for k in every family of the grid.
    #[arg(long)]
    pub kmax: Option<i64>,
    /// Upper bound for l (omega4, omega5).
    #[arg(long)]
    pub lmax: Option<u32>,
    /// Omega6: bound on n(w) + m(w).
    #[arg(long)]
    pub alt_total: Option<u32>,
    /// Oracle: all words up to this length, up to rotation.
    #[arg(long, default_value_t = 8)]
    pub maxlen: usize,
    /// Oracle: number of extra random words.
    #[arg(long, default_value_t = 200)]
    pub random: usize,
    /// Oracle: maximal length of the random words.
    #[arg(long, default_value_t = 10)]
    pub randlen: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// One braid word per line; blank lines and `#` comments are skipped.
    pub word_file: PathBuf,
    pub output_dir: PathBuf,
}

fn parse_class(s: &str) -> Result<MurasugiClass, String> {
    s.parse().map_err(|e: kh3::braid::BraidError| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("KH3_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let code = match cli.cmd {
        Command::Compute(a) => compute::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::Sweep(a) => sweep::run(&a),
    };
    ExitCode::from(code)
}
