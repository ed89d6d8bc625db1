//! Command-line front end.
//!
//! Every analysis command writes one JSON report (to `--output` or stdout)
//! with a stable key order. Failures still produce a report, with `result`
//! null and a machine-readable `error`. Exit codes: 0 success, 1 I/O
//! failure, 2 invalid input, 3 no convergence.

mod commands;

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::SystemTime;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::prefs::Tolerances;
use crate::report::to_json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "intranskit",
    version,
    about = "Analyse intransitive preferences and run competitive-evolution simulations"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Omit the timestamp so identical requests give identical bytes.
    #[arg(long, global = true)]
    pub reproducible: bool,

    /// Random seed for commands that sample.
    #[arg(long, global = true, env = "INTRANSKIT_SEED")]
    pub seed: Option<u64>,

    /// Largest |m[i][j] + m[j][i]| accepted in input matrices.
    #[arg(long, global = true, default_value_t = Tolerances::default().anti)]
    pub anti_tol: f64,

    /// Values with |x| at most this are indifference.
    #[arg(long, global = true, default_value_t = Tolerances::default().zero)]
    pub zero_tol: f64,

    /// Largest triplet cycle sum treated as transitive.
    #[arg(long, global = true, default_value_t = Tolerances::default().delta)]
    pub delta_tol: f64,
}

impl GlobalArgs {
    pub fn tolerances(&self) -> Tolerances {
        Tolerances {
            anti: self.anti_tol,
            zero: self.zero_tol,
            delta: self.delta_tol,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Triplet census, conditional rankings and current rankings of a matrix.
    Analyze {
        matrix: PathBuf,
        /// JSON group `{"members": [...], "weights": [...]}`; all elements
        /// with unit weights by default.
        #[arg(long)]
        reference_group: Option<PathBuf>,
    },
    /// Ordered partition of the transitive closure and pair classes.
    Closure { matrix: PathBuf },
    /// Split a co-ranking into transitive and intransitive parts.
    Decompose {
        matrix: PathBuf,
        /// Also write `transitive.csv` and `intransitive.csv` here.
        #[arg(long)]
        csv_dir: Option<PathBuf>,
    },
    /// Solve a zero-sum co-ranking game by fictitious play.
    Nash {
        game: PathBuf,
        #[arg(long, default_value_t = crate::games::DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[arg(long, default_value_t = crate::games::DEFAULT_MAX_ITERATIONS)]
        max_iterations: u64,
    },
    /// Coarsen multi-criteria data with imperfect discrimination.
    Coarsen {
        criteria: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Threshold)]
        method: Method,
        /// Exponent of the Gaussian coarsening.
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        /// Search for three utility points realising the strongest
        /// intransitivity the thresholds allow.
        #[arg(long)]
        witness: bool,
    },
    /// Co-rankings between rank distributions.
    Quantum {
        /// Distribution files `{"k": ..., "p": [...]}`, labelled by file stem.
        #[arg(required = true)]
        distributions: Vec<PathBuf>,
    },
    /// Run the particle simulation and write CSV series and snapshots.
    Simulate {
        /// TOML (by extension) or JSON configuration.
        config: PathBuf,
        /// Directory for `series.csv` and `snapshot_<step>.csv`.
        #[arg(long, default_value = "simulation")]
        out_dir: PathBuf,
        /// Run this many seeds (`seed`, `seed + 1`, ...) in parallel, each in
        /// its own `seed_<s>` subdirectory.
        #[arg(long)]
        sweep: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Threshold,
    Gauss,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Analyze { .. } => "analyze",
            Command::Closure { .. } => "closure",
            Command::Decompose { .. } => "decompose",
            Command::Nash { .. } => "nash",
            Command::Coarsen { .. } => "coarsen",
            Command::Quantum { .. } => "quantum",
            Command::Simulate { .. } => "simulate",
        }
    }
}

#[derive(Debug, Serialize)]
struct ErrorReport {
    kind: &'static str,
    message: String,
}

#[derive(Debug, Serialize)]
struct Envelope {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<String>,
    result: Option<Value>,
    error: Option<ErrorReport>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::NoConvergence { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_VALIDATION,
    }
}

/// Parses `args` (including the program name) and executes the request.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            }
        }
    }
}

/// Executes a parsed request and emits its report.
pub fn execute(cli: &Cli) -> i32 {
    let outcome = commands::dispatch(&cli.command, &cli.global);
    let (result, error, code) = match outcome {
        Ok(v) => (Some(v), None, EXIT_OK),
        Err(e) => {
            eprintln!("error: {e}");
            let code = exit_code(&e);
            let report = ErrorReport {
                kind: e.kind(),
                message: e.to_string(),
            };
            (None, Some(report), code)
        }
    };
    let envelope = Envelope {
        tool: "intranskit",
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name(),
        generated_at: (!cli.global.reproducible)
            .then(|| humantime::format_rfc3339_seconds(SystemTime::now()).to_string()),
        result,
        error,
    };
    let text = match to_json(&envelope) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_IO;
        }
    };
    let written = match &cli.global.output {
        Some(path) => fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_IO;
    }
    code
}
