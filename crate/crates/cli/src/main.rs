//! `stable-tally`: tabulate, explain, simulate, audit and convert ranked-ballot
//! elections.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 unreadable input, invalid grid or
//! unsupported conversion, 3 method not applicable to the input, 4 a
//! computational cap was exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use stable_tally::methods::{MethodId, MethodOptions, DEFAULT_RP_CAP};
use stable_tally::stable::DEFAULT_SMITH_CAP;

mod commands;
mod report;

#[derive(Parser, Debug)]
#[command(
    name = "stable-tally",
    version,
    about = "Stable Voting and related ranked-ballot methods"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the winners of one or more methods.
    Tabulate(InputArgs),
    /// Walk through the Stable Voting match list.
    Explain(InputArgs),
    /// Run a tie-rate or monotonicity experiment on random profiles.
    Simulate(SimulateArgs),
    /// Audit winners against the Condorcet, Smith, Condorcet loser,
    /// stability and ISDA criteria.
    Check(InputArgs),
    /// Convert between Preflib, profile JSON and margin-graph JSON.
    Convert(ConvertArgs),
}

#[derive(Args, Debug, Clone)]
struct Limits {
    /// Largest Smith set the Stable Voting recursion will enter; 0 disables
    /// the limit.
    #[arg(long, default_value_t = DEFAULT_SMITH_CAP)]
    smith_cap: usize,
    /// Largest number of tie-break orders Ranked Pairs will enumerate.
    #[arg(long, default_value_t = DEFAULT_RP_CAP)]
    rp_cap: u64,
}

impl Limits {
    fn options(&self) -> MethodOptions {
        MethodOptions {
            smith_cap: (self.smith_cap > 0).then_some(self.smith_cap),
            rp_cap: self.rp_cap,
        }
    }
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Election file (.soc, .soi, .toc, .toi or .json); `-` reads stdin.
    #[arg(short, long)]
    input: PathBuf,
    /// Method to run; repeat for several.
    #[arg(short, long = "method", value_parser = parse_method)]
    methods: Vec<MethodId>,
    #[arg(short, long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    limits: Limits,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Experiment::Ties)]
    experiment: Experiment,
    #[arg(short, long = "method", value_parser = parse_method)]
    methods: Vec<MethodId>,
    /// Candidate counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    candidates: Vec<usize>,
    /// Voter counts, comma separated. Tie experiments pool each count with
    /// its even/odd partner.
    #[arg(long, value_delimiter = ',', required = true)]
    voters: Vec<usize>,
    /// Profiles per voter count (per parity for tie experiments).
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, required_unless_present = "exhaustive")]
    seed: Option<u64>,
    /// Enumerate every linear profile instead of sampling (tie experiment
    /// only, exact voter counts).
    #[arg(long)]
    exhaustive: bool,
    /// Write `<OUTPUT>.csv` and `<OUTPUT>.json` instead of printing.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(short, long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    limits: Limits,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    to: Target,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Build a ballot profile with the same margins when the input is a
    /// margin graph.
    #[arg(long)]
    realize: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Experiment {
    Ties,
    Monotonicity,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    /// Preflib order file.
    Preflib,
    /// Profile JSON.
    Json,
    /// Margin-graph JSON.
    Graph,
}

fn parse_method(s: &str) -> Result<MethodId, String> {
    s.parse()
        .map_err(|e: stable_tally::methods::UnknownMethod| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Tabulate(a) => commands::tabulate(&a),
        Command::Explain(a) => commands::explain(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Check(a) => commands::check(&a),
        Command::Convert(a) => commands::convert(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
