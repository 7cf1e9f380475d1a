use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable consulted when `--out-dir` is absent.
pub const OUT_DIR_ENV: &str = "QCR_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "qcr",
    version,
    about = "Bound curves, inequality verification and protocol evaluation for common randomness from isotropic states"
)]
pub struct Cli {
    /// Directory that receives output files (created if missing) [default: .]
    #[arg(long, global = true, env = OUT_DIR_ENV, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate bound and rate curves on a grid and write one file per model
    Bounds(BoundsArgs),
    /// Run seeded inequality suites and write a slack report
    Verify(VerifyArgs),
    /// Evaluate a strategy file: success probability, min-entropy and bound
    Protocol(ProtocolArgs),
    /// Search for a good no-communication strategy with the seesaw optimizer
    Optimize(OptimizeArgs),
    /// Write one of the built-in example strategies to a file
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Self::Csv => "csv",
            Self::Json => "json",
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Models to evaluate: free, classical, quantum, capacity, superdense, achievable
    #[arg(
        long = "model",
        value_delimiter = ',',
        required = true,
        value_name = "MODEL"
    )]
    pub models: Vec<String>,

    /// Noise grid, `start:end:count` (inclusive) or a single value
    #[arg(long, default_value = "0:1:101", value_name = "GRID")]
    pub rho: String,

    /// Error exponents for the classical and quantum bounds, comma-separated
    #[arg(long, default_value = "0.05", value_name = "GRID")]
    pub gamma: String,

    /// Min-entropy k: scales lower bounds and sets the free-model exponent
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,

    /// closed (closed forms) or sweep (numeric supremum over delta)
    #[arg(long, default_value = "closed")]
    pub method: String,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// hypercontractivity, holder, partial-trace, spectral-power, epr-channel, trace-identity or all
    #[arg(long, default_value = "all")]
    pub suite: String,

    /// Random inputs per suite
    #[arg(long, default_value_t = 200)]
    pub trials: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Pass threshold on the negated minimum slack (default: per suite)
    #[arg(long)]
    pub tolerance: Option<f64>,

    /// Hill-climbing iterations on each suite's tightest case
    #[arg(long, default_value_t = 0)]
    pub extremal_iters: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Test hook: perturbs the channel noise to force failures
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub tamper: f64,
}

#[derive(Debug, Args)]
pub struct ProtocolArgs {
    /// Strategy file (JSON)
    pub strategy: PathBuf,

    #[arg(long)]
    pub rho: f64,

    /// Min-entropy of Alice's output alone (marginal) or with the message (joint)
    #[arg(long, default_value = "marginal")]
    pub min_entropy: String,

    /// Print the evaluation record as JSON
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[arg(long)]
    pub rho: f64,

    /// Qubits per party (1 to 3)
    #[arg(long)]
    pub n: usize,

    /// Required min-entropy of Alice's output; 2^k outcomes
    #[arg(long)]
    pub k: usize,

    #[arg(long, default_value_t = 20)]
    pub restarts: usize,

    /// Maximum seesaw iterations per restart
    #[arg(long, default_value_t = 100)]
    pub iters: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// File name inside the output directory [default: seesaw_n<N>_k<K>.json]
    #[arg(long)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    /// Both parties measure every qubit in the computational basis
    Basis,
    /// Classical message carrying Alice's full basis outcome
    FullCommunication,
    /// Alice forwards her measured qubits
    ForwardQubit,
    /// The basis protocol as a zero-qubit quantum strategy
    MeasureAndEmbed,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    #[arg(value_enum)]
    pub name: ExampleName,

    #[arg(long, default_value_t = 1)]
    pub n: usize,

    /// File name inside the output directory [default: <name>_n<N>.json]
    #[arg(long)]
    pub output: Option<String>,
}
