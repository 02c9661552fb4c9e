//! `costas`: construct Welch and Golomb Costas permutations, compute exact
//! cross-correlation tables, and check the family bounds from the shell.
//!
//! Exit codes: 0 when every verdict passes, 1 when a verdict fails, 2 for
//! usage or parameter errors.

mod run;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "costas",
    version,
    about = "Costas permutation families: construction, cross-correlation, bound checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for scans; 0 means one per core.
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    pub workers: usize,

    /// Directory for cached log tables.
    #[arg(long, global = true, value_name = "DIR", env = "COSTAS_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
pub enum Command {
    /// Construct one permutation and print it
    Generate(GenerateArgs),
    /// Check serialized or inline sequences for the Costas property
    VerifyCostas(VerifyArgs),
    /// Cross-correlation of one pair: a single entry or the full table
    Xcorr(XcorrArgs),
    /// Maximal cross-correlation over one family
    Family(FamilyArgs),
    /// Verify the family bounds over a parameter range
    TheoremCheck(TheoremArgs),
    /// Exhaustive solution-count sweeps against their bounds
    LemmaCheck(LemmaArgs),
    /// Scan full Golomb families against the subfamily bound
    ConjectureScan(ConjectureArgs),
}

/// One Welch permutation, written `p:g` or `p:g:shift`.
#[derive(Clone, Debug)]
pub struct WelchSpec {
    pub p: u64,
    pub g: u64,
    pub shift: i64,
}

/// One Golomb permutation, written `q:g1:g2` in canonical integer
/// encodings of the field elements.
#[derive(Clone, Debug)]
pub struct GolombSpec {
    pub q: u64,
    pub g1: u64,
    pub g2: u64,
}

fn parse_welch(s: &str) -> Result<WelchSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let err = |what: &str| format!("expected p:g or p:g:shift, {what} in `{s}`");
    match parts.as_slice() {
        [p, g] => Ok(WelchSpec {
            p: p.parse().map_err(|_| err("bad p"))?,
            g: g.parse().map_err(|_| err("bad g"))?,
            shift: 0,
        }),
        [p, g, shift] => Ok(WelchSpec {
            p: p.parse().map_err(|_| err("bad p"))?,
            g: g.parse().map_err(|_| err("bad g"))?,
            shift: shift.parse().map_err(|_| err("bad shift"))?,
        }),
        _ => Err(err("wrong number of fields")),
    }
}

fn parse_golomb(s: &str) -> Result<GolombSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let err = |what: &str| format!("expected q:g1:g2, {what} in `{s}`");
    match parts.as_slice() {
        [q, g1, g2] => Ok(GolombSpec {
            q: q.parse().map_err(|_| err("bad q"))?,
            g1: g1.parse().map_err(|_| err("bad g1"))?,
            g2: g2.parse().map_err(|_| err("bad g2"))?,
        }),
        _ => Err(err("wrong number of fields")),
    }
}

#[derive(Args)]
#[command(group(ArgGroup::new("spec").required(true).args(["welch", "golomb"])))]
pub struct GenerateArgs {
    /// Welch permutation p:g[:shift]
    #[arg(long, value_name = "P:G[:S]", value_parser = parse_welch)]
    pub welch: Option<WelchSpec>,
    /// Golomb permutation q:g1:g2
    #[arg(long, value_name = "Q:G1:G2", value_parser = parse_golomb)]
    pub golomb: Option<GolombSpec>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// File of serialized permutations; stdin when omitted
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Inline space-separated sequence, e.g. "2 4 3 1"; repeatable
    #[arg(long, value_name = "SEQ")]
    pub values: Vec<String>,
}

#[derive(Args)]
pub struct XcorrArgs {
    /// Welch member p:g[:shift]; the pair is taken in flag order,
    /// --welch members before --golomb members
    #[arg(long, value_name = "P:G[:S]", value_parser = parse_welch)]
    pub welch: Vec<WelchSpec>,
    /// Golomb member q:g1:g2
    #[arg(long, value_name = "Q:G1:G2", value_parser = parse_golomb)]
    pub golomb: Vec<GolombSpec>,
    /// Row shift; with --v, print the single entry instead of the table
    #[arg(long, allow_hyphen_values = true, requires = "v")]
    pub u: Option<i64>,
    /// Value shift
    #[arg(long, allow_hyphen_values = true, requires = "u")]
    pub v: Option<i64>,
}

#[derive(Args)]
#[command(group(
    ArgGroup::new("which").required(true).args(["welch", "golomb_sub", "golomb_full"])
))]
pub struct FamilyArgs {
    /// W_p: one permutation per primitive root mod p
    #[arg(long, requires = "p")]
    pub welch: bool,
    /// G_q: fixed g2, one permutation per primitive g1
    #[arg(long, requires = "q")]
    pub golomb_sub: bool,
    /// L_q: all primitive pairs (g1, g2)
    #[arg(long, requires = "q")]
    pub golomb_full: bool,
    #[arg(long, value_name = "P")]
    pub p: Option<u64>,
    #[arg(long, value_name = "Q")]
    pub q: Option<u64>,
    /// g2 encoding for --golomb-sub; smallest primitive when omitted
    #[arg(long, value_name = "G2")]
    pub g2: Option<u64>,
}

#[derive(Args)]
#[command(group(ArgGroup::new("which").required(true).args(["welch", "golomb"])))]
pub struct TheoremArgs {
    /// Check C(W_p) over primes p in [p-min, p-max]
    #[arg(long, requires = "p_max")]
    pub welch: bool,
    /// Check C(G_q) over prime powers q in [q-min, q-max]
    #[arg(long, requires = "q_max")]
    pub golomb: bool,
    #[arg(long, default_value_t = 5, value_name = "P")]
    pub p_min: u64,
    #[arg(long, value_name = "P")]
    pub p_max: Option<u64>,
    #[arg(long, default_value_t = 4, value_name = "Q")]
    pub q_min: u64,
    #[arg(long, value_name = "Q")]
    pub q_max: Option<u64>,
    /// Sweep every primitive g2 instead of only the canonical smallest
    #[arg(long)]
    pub all_g2: bool,
}

#[derive(Args)]
pub struct LemmaArgs {
    /// Which solution-count lemma: 1 (prime fields), 2 or 3 (prime powers)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub lemma: u8,
    #[arg(long, default_value_t = 5, value_name = "P")]
    pub p_min: u64,
    #[arg(long, value_name = "P")]
    pub p_max: Option<u64>,
    #[arg(long, default_value_t = 4, value_name = "Q")]
    pub q_min: u64,
    #[arg(long, value_name = "Q")]
    pub q_max: Option<u64>,
}

#[derive(Args)]
pub struct ConjectureArgs {
    /// Single field order
    #[arg(long, value_name = "Q", conflicts_with_all = ["q_min", "q_max"])]
    pub q: Option<u64>,
    #[arg(long, value_name = "Q", requires = "q_max")]
    pub q_min: Option<u64>,
    #[arg(long, value_name = "Q", requires = "q_min")]
    pub q_max: Option<u64>,
    /// Allow scans above q = 64 (pair counts grow fast; expect minutes)
    #[arg(long)]
    pub long_run: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run::run(&cli)) {
        Ok(report) => {
            if let Err(e) = run::emit(cli.output.as_deref(), &report.body) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
