use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use stable_tally::io::{
    parse_election, write_margin_graph, write_preflib, write_profile_json, InputFormat,
};
use stable_tally::methods::{evaluate, Election, MethodId};
use stable_tally::sim::{
    check_criteria, exhaustive_tie_rates, monotonicity_experiment, tie_rate_experiment,
};
use stable_tally::stable::sv_trace_with_cap;
use stable_tally::{condorcet_winner, Error};

use crate::report;
use crate::{ConvertArgs, Experiment, Format, InputArgs, SimulateArgs, Target};

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, io::Error),
    Input(PathBuf, Error),
    Engine(Error),
    Unsupported(String),
    NotApplicable(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) => 1,
            CliError::Input(..) | CliError::Unsupported(_) => 2,
            CliError::NotApplicable(_) => 3,
            CliError::Engine(e) => match e {
                Error::NeedsBallots(_)
                | Error::TiedTopTier
                | Error::AllBallotsExhausted
                | Error::NotLinear { .. } => 3,
                Error::SmithCapExceeded { .. } | Error::RankedPairsIndeterminate { .. } => 4,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Input(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Unsupported(m) | CliError::NotApplicable(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn read_election(path: &Path) -> CliResult<Election> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?
    };
    let format = InputFormat::detect(Some(path), &text);
    parse_election(&text, format).map_err(|e| CliError::Input(path.to_path_buf(), e.into()))
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Io(p.to_path_buf(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn methods_or(methods: &[MethodId], default: &[MethodId]) -> Vec<MethodId> {
    if methods.is_empty() {
        default.to_vec()
    } else {
        methods.to_vec()
    }
}

pub fn tabulate(args: &InputArgs) -> CliResult {
    let election = read_election(&args.input)?;
    let opts = args.limits.options();
    let methods = methods_or(&args.methods, &[MethodId::StableVoting]);
    let mut results = Vec::with_capacity(methods.len());
    for m in methods {
        results.push((m, evaluate(m, &election, &opts)?));
    }
    let text = match args.format {
        Format::Json => report::tabulate_json(&election, &results),
        Format::Csv => report::tabulate_csv(&election, &results),
        Format::Text => report::tabulate_text(&election, &results),
    };
    write_out(None, &text)
}

pub fn explain(args: &InputArgs) -> CliResult {
    let election = read_election(&args.input)?;
    let method = match args.methods.as_slice() {
        [] => MethodId::StableVoting,
        [m] => *m,
        _ => {
            return Err(CliError::Unsupported(
                "explain takes a single method".into(),
            ))
        }
    };
    let mg = election.graph();
    let (graph, note) = match method {
        MethodId::StableVoting => (mg.clone(), None),
        MethodId::Svs => {
            let smith = stable_tally::tournament::smith_set_on(mg, mg.all());
            let (g, _) = mg.restrict(smith)?;
            (g, Some("Restricted to the Smith set."))
        }
        other => {
            return Err(CliError::NotApplicable(format!(
                "explain supports sv and svs, not {other}"
            )))
        }
    };
    let trace = sv_trace_with_cap(&graph, args.limits.options().smith_cap)?;
    let text = match args.format {
        Format::Json => report::trace_json(&graph, &trace),
        Format::Text | Format::Csv => {
            let mut out = String::new();
            if let Some(n) = note {
                out.push_str(n);
                out.push('\n');
            }
            match condorcet_winner(&graph) {
                Some(cw) if graph.num_candidates() > 1 => {
                    out.push_str(&format!(
                        "{} beats every other candidate head-to-head and is elected.\n",
                        graph.name(cw)
                    ));
                }
                _ => out.push_str(&trace.render(&graph)),
            }
            out
        }
    };
    write_out(None, &text)
}

pub fn check(args: &InputArgs) -> CliResult {
    let election = read_election(&args.input)?;
    let opts = args.limits.options();
    let methods = methods_or(&args.methods, &[MethodId::StableVoting]);
    let mut reports = Vec::with_capacity(methods.len());
    for m in methods {
        reports.push(check_criteria(&election, m, &opts)?);
    }
    let text = match args.format {
        Format::Json => report::check_json(&election, &reports),
        Format::Text | Format::Csv => report::check_text(&election, &reports),
    };
    write_out(None, &text)
}

pub fn simulate(args: &SimulateArgs) -> CliResult {
    let opts = args.limits.options();
    let result = match args.experiment {
        Experiment::Ties => {
            let methods = methods_or(
                &args.methods,
                &[MethodId::StableVoting, MethodId::IrvPut, MethodId::BeatPath],
            );
            if args.exhaustive {
                exhaustive_tie_rates(&methods, &args.candidates, &args.voters, &opts)?
            } else {
                let seed = args
                    .seed
                    .expect("clap requires a seed without --exhaustive");
                tie_rate_experiment(
                    &methods,
                    &args.candidates,
                    &args.voters,
                    args.samples,
                    seed,
                    &opts,
                )?
            }
        }
        Experiment::Monotonicity => {
            if args.exhaustive {
                return Err(CliError::Unsupported(
                    "--exhaustive applies to the tie experiment only".into(),
                ));
            }
            let &[n] = args.candidates.as_slice() else {
                return Err(CliError::Unsupported(
                    "the monotonicity experiment takes a single candidate count".into(),
                ));
            };
            let methods = methods_or(
                &args.methods,
                &[MethodId::StableVoting, MethodId::IrvPut, MethodId::SmithIrv],
            );
            let seed = args
                .seed
                .expect("clap requires a seed without --exhaustive");
            monotonicity_experiment(&methods, n, &args.voters, args.samples, seed, &opts)?
        }
    };
    match &args.output {
        Some(prefix) => {
            write_out(Some(&prefix.with_extension("csv")), &result.to_csv())?;
            write_out(Some(&prefix.with_extension("json")), &result.to_json())
        }
        None => match args.format {
            Format::Json => write_out(None, &result.to_json()),
            Format::Csv | Format::Text => write_out(None, &result.to_csv()),
        },
    }
}

pub fn convert(args: &ConvertArgs) -> CliResult {
    let election = read_election(&args.input)?;
    let title = args
        .input
        .file_stem()
        .and_then(|s| s.to_str())
        .filter(|s| *s != "-")
        .unwrap_or("election");
    let profile = match (election.profile(), args.to) {
        (_, Target::Graph) => None,
        (Some(p), _) => Some(p.clone()),
        (None, _) if args.realize => Some(election.graph().realize_profile()?),
        (None, _) => {
            return Err(CliError::Unsupported(
                "a margin graph has no ballots; convert to `graph`, or pass --realize to build a profile with the same margins".into(),
            ))
        }
    };
    let text = match (args.to, profile) {
        (Target::Graph, _) => {
            if election.profile().is_some() {
                eprintln!("note: ballots are dropped; only head-to-head margins are kept");
            }
            write_margin_graph(election.graph())
        }
        (Target::Json, Some(p)) => write_profile_json(&p),
        (Target::Preflib, Some(p)) => write_preflib(&p, title),
        (_, None) => unreachable!("profile resolved above"),
    };
    write_out(args.output.as_deref(), &text)
}
