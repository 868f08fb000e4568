//! Command-line surface (clap definitions).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

const EXIT_CODES: &str = "EXIT CODES:
  0  success
  1  assertion failure in --assert mode
  2  command-line usage error
  3  config/range/parameter violation
  4  file error

ENVIRONMENT:
  RAYON_NUM_THREADS  worker threads for sweeps (output is identical
                     regardless of thread count)";

#[derive(Parser)]
#[command(
    name = "lowzeros",
    version,
    about = "Exponential-sum identities, Petersson averages, and symplectic density tables",
    after_help = EXIT_CODES,
    after_long_help = EXIT_CODES
)]
pub struct Cli {
    /// key=value config file; command-line flags override file values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output file (default: stdout)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format: csv or tsv
    #[arg(long, global = true)]
    pub format: Option<String>,

    /// Exit nonzero if any verification row fails its check
    #[arg(long, global = true)]
    pub assert: bool,

    /// Seed for randomized grids
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Evaluate a single exponential sum
    Sum {
        #[command(subcommand)]
        which: SumCmd,
    },
    /// Run an identity-verification grid
    Verify {
        #[command(subcommand)]
        which: VerifyCmd,
    },
    /// Petersson averages
    Petersson {
        #[command(subcommand)]
        which: PeterssonCmd,
    },
    /// Density constants, main terms, and pole terms
    Density {
        #[command(subcommand)]
        which: DensityCmd,
    },
    /// Bessel-Kloosterman prime sums and their main terms
    Qstar {
        #[command(subcommand)]
        which: QstarCmd,
    },
    /// Double-Kloosterman prime-sum sweeps
    Asum {
        #[command(subcommand)]
        which: AsumCmd,
    },
    /// Operations on ingested eigenvalue/zero data
    Explicit {
        #[command(subcommand)]
        which: ExplicitCmd,
    },
}

#[derive(Subcommand)]
pub enum SumCmd {
    /// S(m, n; q)
    Kloosterman(SumKloostermanArgs),
    /// G_chi(n) for the chi-th character modulo q (enumeration order)
    Gauss(SumGaussArgs),
    /// R(n, q) in a chosen evaluation mode
    Ramanujan(SumRamanujanArgs),
}

#[derive(Args)]
pub struct SumKloostermanArgs {
    #[arg(long)]
    pub m: Option<i64>,
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Args)]
pub struct SumGaussArgs {
    #[arg(long)]
    pub q: Option<u64>,
    /// Character index in the deterministic enumeration
    #[arg(long)]
    pub chi: Option<u64>,
    #[arg(long)]
    pub n: Option<i64>,
}

#[derive(Args)]
pub struct SumRamanujanArgs {
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub q: Option<u64>,
    /// brute | divisor | von-sterneck
    #[arg(long)]
    pub mode: Option<String>,
}

#[derive(Subcommand)]
pub enum VerifyCmd {
    /// Ramanujan tri-mode equality grid
    Vonsterneck(VerifyVonSterneckArgs),
    /// Kloosterman character decomposition
    Lemma62(VerifyLemma62Args),
    /// Twisted Kloosterman-square closed forms and intermediate identity
    Lemma63(VerifyLemma63Args),
    /// Gauss-sum induction reduction
    Lemma64(VerifyLemma64Args),
    /// psi brute vs closed grid
    Lemma65(VerifyLemma65Args),
    /// Kloosterman splitting on random coprime tuples
    Split(VerifySplitArgs),
    /// Character product identity grid
    Charprod(VerifyCharprodArgs),
}

#[derive(Args)]
pub struct VerifyVonSterneckArgs {
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long)]
    pub q_max: Option<u64>,
}

#[derive(Args)]
pub struct VerifyLemma62Args {
    #[arg(long)]
    pub b_max: Option<u64>,
    #[arg(long)]
    pub p_max: Option<u64>,
    #[arg(long)]
    pub n_max: Option<u64>,
    #[arg(long)]
    pub m_max: Option<u64>,
}

#[derive(Args)]
pub struct VerifyLemma63Args {
    /// Largest prime level for the principal closed form
    #[arg(long)]
    pub max_level: Option<u64>,
    /// Largest prime level for the all-characters intermediate identity
    #[arg(long)]
    pub intermediate_max_level: Option<u64>,
}

#[derive(Args)]
pub struct VerifyLemma64Args {
    #[arg(long)]
    pub r_max: Option<u64>,
    #[arg(long)]
    pub b_max: Option<u64>,
    #[arg(long)]
    pub m_max: Option<u64>,
}

#[derive(Args)]
pub struct VerifyLemma65Args {
    /// Shift range, e.g. 1..10
    #[arg(long)]
    pub n: Option<String>,
    /// Modulus range, e.g. 1..100
    #[arg(long)]
    pub r: Option<String>,
}

#[derive(Args)]
pub struct VerifySplitArgs {
    #[arg(long)]
    pub count: Option<u64>,
    #[arg(long)]
    pub b_max: Option<u64>,
}

#[derive(Args)]
pub struct VerifyCharprodArgs {
    #[arg(long)]
    pub r_max: Option<u64>,
    #[arg(long)]
    pub m_max: Option<u64>,
}

#[derive(Subcommand)]
pub enum PeterssonCmd {
    /// Truncated Delta_{k,N}(m,n) with certified tail bound
    Delta(PeterssonDeltaArgs),
}

#[derive(Args)]
pub struct PeterssonDeltaArgs {
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub level: Option<u64>,
    #[arg(long)]
    pub m: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub b_max: Option<u64>,
}

#[derive(Subcommand)]
pub enum DensityCmd {
    /// The four corollary constants with their support-radius provenance
    Table,
    /// Closed-form main terms over a sigma range
    MainTerm(DensityMainTermArgs),
    /// Family-normalized pole term along a level list
    Pole(DensityPoleArgs),
    /// The 6/pi^2 pole Euler product, both routes
    PoleProduct(DensityPoleProductArgs),
}

#[derive(Args)]
pub struct DensityMainTermArgs {
    /// sigma value or range a..b..step
    #[arg(long)]
    pub sigma: Option<String>,
}

#[derive(Args)]
pub struct DensityPoleArgs {
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Comma-separated prime levels
    #[arg(long)]
    pub levels: Option<String>,
}

#[derive(Args)]
pub struct DensityPoleProductArgs {
    #[arg(long)]
    pub p_cap: Option<u64>,
    #[arg(long)]
    pub d_cap: Option<u64>,
}

#[derive(Subcommand)]
pub enum QstarCmd {
    /// Brute-force prime sum
    Brute(QstarArgs),
    /// Closed-form main term
    Main(QstarArgs),
    /// Brute vs main across a level list
    Sweep(QstarArgs),
}

#[derive(Args)]
pub struct QstarArgs {
    #[arg(long)]
    pub m1: Option<u64>,
    #[arg(long)]
    pub m2: Option<u64>,
    #[arg(long)]
    pub b1: Option<u64>,
    #[arg(long)]
    pub b2: Option<u64>,
    /// Prime level (single evaluations)
    #[arg(long)]
    pub level: Option<u64>,
    /// Comma-separated prime levels (sweep)
    #[arg(long)]
    pub levels: Option<String>,
    #[arg(long)]
    pub k1: Option<u64>,
    #[arg(long)]
    pub k2: Option<u64>,
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Subcommand)]
pub enum AsumCmd {
    /// Brute force vs main term over an x grid
    Sweep(AsumArgs),
}

#[derive(Args)]
pub struct AsumArgs {
    #[arg(long)]
    pub level: Option<u64>,
    /// Comma-separated x checkpoints
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub m1: Option<u64>,
    #[arg(long)]
    pub m2: Option<u64>,
    #[arg(long)]
    pub b1: Option<u64>,
    #[arg(long)]
    pub b2: Option<u64>,
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Subcommand)]
pub enum ExplicitCmd {
    /// Prime sum S(f (x) g; phi)
    S(ExplicitSArgs),
    /// One-level density of a zero list
    Density(ExplicitDensityArgs),
    /// Explicit-formula residual of a (f, g, zeros) triple
    Residual(ExplicitResidualArgs),
}

#[derive(Args)]
pub struct ExplicitSArgs {
    /// Eigenvalue table (pass twice for distinct f, g)
    #[arg(long, action = clap::ArgAction::Append)]
    pub eigenvalues: Vec<PathBuf>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub conductor: Option<f64>,
}

#[derive(Args)]
pub struct ExplicitDensityArgs {
    #[arg(long)]
    pub zeros: PathBuf,
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Args)]
pub struct ExplicitResidualArgs {
    /// Eigenvalue table (pass twice for distinct f, g)
    #[arg(long, action = clap::ArgAction::Append)]
    pub eigenvalues: Vec<PathBuf>,
    #[arg(long)]
    pub zeros: PathBuf,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub k1: Option<u64>,
    #[arg(long)]
    pub k2: Option<u64>,
    #[arg(long)]
    pub n1: Option<u64>,
    #[arg(long)]
    pub n2: Option<u64>,
    /// auto | on | off
    #[arg(long)]
    pub pole: Option<String>,
}
