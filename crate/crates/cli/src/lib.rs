//! Command implementations behind the `bnq` binary.
//!
//! Every command writes its primary output to the supplied writer (or to `--out`) and
//! reports failure as a [`CliError`] carrying one of the stable exit codes in [`exit`].

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use bnq_core::dynamics::{analyze, format_state, TransitionTable};
use bnq_core::search::{
    run_search_on, CountingBackend, CountingMode, PhiSign, SearchBackend, SearchConfig, SearchReport,
};
use bnq_core::{parse_network, Error, NetworkSpec, NoiseConfig, ParseError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub mod exit {
    pub const OK: u8 = 0;
    pub const INVALID_INPUT: u8 = 1;
    pub const IO: u8 = 2;
    pub const CAPACITY: u8 = 3;
    pub const ORACLE_MISMATCH: u8 = 4;
    pub const NON_CONVERGENCE: u8 = 5;
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    fn io(path: &Path, err: io::Error) -> Self {
        Self::new(exit::IO, format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::CapacityExceeded { .. } | Error::Parse(ParseError::TooManyGenes { .. }) => exit::CAPACITY,
            Error::NonConvergence { .. } => exit::NON_CONVERGENCE,
            _ => exit::INVALID_INPUT,
        };
        let mut message = err.to_string();
        if let Error::NonConvergence { log, .. } = &err {
            for line in log {
                message.push_str("\n  ");
                message.push_str(line);
            }
        }
        Self::new(code, message)
    }
}

pub type CliResult<T = ()> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "bnq", version, about = "Attractor search for synchronous Boolean networks")]
pub struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a BoolNet file and print a summary.
    Validate { path: PathBuf },
    /// Exhaustive attractor analysis from the transition table.
    Classical {
        path: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        /// Also write the state transition graph as an edge list.
        #[arg(long, value_name = "FILE")]
        stg: Option<PathBuf>,
    },
    /// Iterative quantum attractor search with classical verification.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Report destination; stdout when omitted.
    #[arg(long, short, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountingArg {
    Classical,
    Quantum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Effective,
    Circuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhiSignArg {
    Negative,
    Positive,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    pub path: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evolution steps T; defaults to the transient horizon.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = CountingArg::Classical)]
    pub counting: CountingArg,
    /// Counting qubits for quantum counting; defaults to n + 3.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Simulation route for quantum counting.
    #[arg(long, value_enum, default_value_t = BackendArg::Circuit)]
    pub counting_backend: BackendArg,
    #[arg(long, value_enum, default_value_t = BackendArg::Effective)]
    pub backend: BackendArg,
    #[arg(long, default_value_t = 0.0)]
    pub noise_px: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise_py: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise_pz: f64,
    /// Noise trajectories; shots are split evenly across them.
    #[arg(long, default_value_t = 100)]
    pub trajectories: u64,
    /// Rejected measurements tolerated before giving up.
    #[arg(long, default_value_t = 10)]
    pub max_retries: usize,
    #[arg(long, value_enum, default_value_t = PhiSignArg::Negative)]
    pub phi_sign: PhiSignArg,
    /// Directory for one histogram file per run.
    #[arg(long, value_name = "DIR")]
    pub histogram_dir: Option<PathBuf>,
    /// Skip the final comparison against exhaustive classical analysis.
    #[arg(long)]
    pub no_verify: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl SearchArgs {
    /// Validated library configuration for a network with `n` genes.
    pub fn to_config(&self, n: usize) -> CliResult<SearchConfig> {
        let noisy = self.noise_px != 0.0 || self.noise_py != 0.0 || self.noise_pz != 0.0;
        let noise = if noisy {
            if self.backend != BackendArg::Circuit {
                return Err(CliError::new(exit::INVALID_INPUT, "noise requires --backend circuit"));
            }
            Some(NoiseConfig::new(self.noise_px, self.noise_py, self.noise_pz, self.seed)?)
        } else {
            None
        };
        let counting = match self.counting {
            CountingArg::Classical => CountingMode::ClassicalExact,
            CountingArg::Quantum => CountingMode::Quantum {
                precision: self.precision.unwrap_or(n + 3),
                backend: match self.counting_backend {
                    BackendArg::Circuit => CountingBackend::Circuit,
                    BackendArg::Effective => CountingBackend::Effective,
                },
            },
        };
        let config = SearchConfig {
            shots: self.shots,
            seed: self.seed,
            steps: self.steps,
            counting,
            backend: match self.backend {
                BackendArg::Effective => SearchBackend::Effective,
                BackendArg::Circuit => SearchBackend::Circuit,
            },
            noise,
            trajectories: self.trajectories,
            max_retries: self.max_retries,
            phi_sign: match self.phi_sign {
                PhiSignArg::Negative => PhiSign::Negative,
                PhiSignArg::Positive => PhiSign::Positive,
            },
            ..SearchConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

pub fn load_network(path: &Path) -> CliResult<NetworkSpec> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_network(&text).map_err(|e| {
        let code = if matches!(e, ParseError::TooManyGenes { .. }) { exit::CAPACITY } else { exit::INVALID_INPUT };
        CliError::new(code, format!("{}: {e}", path.display()))
    })
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::new(exit::IO, format!("stdout: {e}"))),
    }
}

pub fn cmd_validate(path: &Path, stdout: &mut dyn Write) -> CliResult {
    let spec = load_network(path)?;
    let text = format!("n={}\ngenes: {}\n", spec.n(), spec.genes().join(", "));
    emit(&text, None, stdout)
}

#[derive(Serialize)]
struct ClassicalReport<'a> {
    genes: &'a [String],
    encoding: &'static str,
    num_states: usize,
    transient_horizon: usize,
    attractors: Vec<ClassicalAttractor>,
}

#[derive(Serialize)]
struct ClassicalAttractor {
    cycle: Vec<String>,
    length: usize,
    basin_size: usize,
    max_transient: usize,
}

/// JSON (or CSV) report of every attractor with its basin size and the transient horizon.
pub fn classical_report(spec: &NetworkSpec, format: Format) -> CliResult<String> {
    let table = TransitionTable::build(spec)?;
    let analysis = analyze(&table);
    let n = spec.n();
    let horizon = analysis.depth.iter().copied().max().unwrap_or(0);
    Ok(match format {
        Format::Json => {
            let report = ClassicalReport {
                genes: spec.genes(),
                encoding: bnq_core::search::ENCODING_TAG,
                num_states: table.len(),
                transient_horizon: horizon,
                attractors: analysis
                    .attractors
                    .iter()
                    .map(|a| ClassicalAttractor {
                        cycle: a.cycle_states.iter().map(|&s| format_state(s, n)).collect(),
                        length: a.cycle_states.len(),
                        basin_size: a.basin_size,
                        max_transient: a.max_transient,
                    })
                    .collect(),
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("cycle,length,basin_size,max_transient\n");
            for a in &analysis.attractors {
                let cycle: Vec<String> = a.cycle_states.iter().map(|&st| format_state(st, n)).collect();
                s += &format!("{},{},{},{}\n", cycle.join(";"), a.cycle_states.len(), a.basin_size, a.max_transient);
            }
            s
        }
    })
}

pub fn cmd_classical(path: &Path, output: &OutputArgs, stg: Option<&Path>, stdout: &mut dyn Write) -> CliResult {
    let spec = load_network(path)?;
    let report = classical_report(&spec, output.format)?;
    if let Some(stg) = stg {
        let table = TransitionTable::build(&spec)?;
        fs::write(stg, table.edge_list_display()).map_err(|e| CliError::io(stg, e))?;
    }
    emit(&report, output.out.as_deref(), stdout)
}

fn search_csv(report: &SearchReport) -> String {
    let mut s = String::from("run,cycle,basin_size,max_transient\n");
    for a in &report.attractors {
        s += &format!("{},{},{},{}\n", a.run, a.cycle.join(";"), a.basin_size, a.max_transient);
    }
    s
}

/// Runs the search; the report is written even when the final oracle check fails.
pub fn cmd_search(args: &SearchArgs, stdout: &mut dyn Write) -> CliResult<SearchReport> {
    let spec = load_network(&args.path)?;
    let config = args.to_config(spec.n())?;
    let table = TransitionTable::build(&spec)?;
    let report = run_search_on(&spec, &table, &config)?;

    if let Some(dir) = &args.histogram_dir {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for run in &report.runs {
            let (name, body) = match args.output.format {
                Format::Json => (format!("run_{:03}.json", run.run), run.histogram.to_json() + "\n"),
                Format::Csv => (format!("run_{:03}.csv", run.run), run.histogram.to_csv()),
            };
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
        }
    }
    let text = match args.output.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => search_csv(&report),
    };
    emit(&text, args.output.out.as_deref(), stdout)?;

    if !args.no_verify {
        let oracle = analyze(&table).attractors;
        if !report.matches(&oracle) {
            return Err(CliError::new(
                exit::ORACLE_MISMATCH,
                format!(
                    "search found {} attractors but exhaustive analysis finds {}",
                    report.attractors.len(),
                    oracle.len()
                ),
            ));
        }
    }
    Ok(report)
}

/// Dispatches a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Validate { path } => cmd_validate(path, stdout),
        Command::Classical { path, output, stg } => cmd_classical(path, output, stg.as_deref(), stdout),
        Command::Search(args) => cmd_search(args, stdout).map(|_| ()),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code
        }
    }
}
