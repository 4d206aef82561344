use std::fmt::Write as _;

use serde::Serialize;
use stable_tally::methods::{Election, MethodId};
use stable_tally::sim::{CriteriaReport, Verdict};
use stable_tally::stable::{SvTrace, Verdict as Step};
use stable_tally::tournament::smith_set_on;
use stable_tally::{condorcet_winner, CandidateSet, MarginGraph};

fn names(mg: &MarginGraph, set: CandidateSet) -> Vec<String> {
    set.iter().map(|c| mg.name(c).to_string()).collect()
}

fn listed(mg: &MarginGraph, set: CandidateSet) -> String {
    names(mg, set).join(", ")
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn describe(election: &Election) -> String {
    let count = |k: u64, noun: &str| format!("{k} {noun}{}", if k == 1 { "" } else { "s" });
    let candidates = count(election.num_candidates() as u64, "candidate");
    match election.profile() {
        Some(p) => format!("{candidates}, {}", count(p.num_voters(), "voter")),
        None => format!("{candidates}, margin graph"),
    }
}

#[derive(Serialize)]
struct Tabulation {
    method: MethodId,
    winners: Vec<String>,
    is_tie: bool,
    condorcet_winner: Option<String>,
    smith_set: Vec<String>,
}

pub fn tabulate_json(election: &Election, results: &[(MethodId, CandidateSet)]) -> String {
    let mg = election.graph();
    let cw = condorcet_winner(mg).map(|c| mg.name(c).to_string());
    let smith = names(mg, smith_set_on(mg, mg.all()));
    let rows: Vec<Tabulation> = results
        .iter()
        .map(|&(method, w)| Tabulation {
            method,
            winners: names(mg, w),
            is_tie: w.len() > 1,
            condorcet_winner: cw.clone(),
            smith_set: smith.clone(),
        })
        .collect();
    to_json(&rows)
}

pub fn tabulate_csv(election: &Election, results: &[(MethodId, CandidateSet)]) -> String {
    let mg = election.graph();
    let mut out = String::from("method,winners,is_tie\n");
    for &(m, w) in results {
        let _ = writeln!(out, "{m},{},{}", names(mg, w).join(";"), w.len() > 1);
    }
    out
}

pub fn tabulate_text(election: &Election, results: &[(MethodId, CandidateSet)]) -> String {
    let mg = election.graph();
    let mut out = String::new();
    let _ = writeln!(out, "Election: {}", describe(election));
    let cw = condorcet_winner(mg).map_or("none".to_string(), |c| mg.name(c).to_string());
    let _ = writeln!(out, "Condorcet winner: {cw}");
    let _ = writeln!(out, "Smith set: {}", listed(mg, smith_set_on(mg, mg.all())));
    let width = results
        .iter()
        .map(|(m, _)| m.name().len())
        .max()
        .unwrap_or(0);
    for &(m, w) in results {
        let verdict = if w.len() > 1 {
            format!("tie between {}", listed(mg, w))
        } else {
            listed(mg, w)
        };
        let _ = writeln!(out, "{:width$}  {verdict}", m.name());
    }
    out
}

#[derive(Serialize)]
struct TraceStep {
    first: String,
    second: String,
    margin: i64,
    verdict: &'static str,
    sub_winners: Vec<String>,
}

#[derive(Serialize)]
struct TraceDoc {
    winners: Vec<String>,
    deciding_margin: Option<i64>,
    matches: Vec<TraceStep>,
}

pub fn trace_json(mg: &MarginGraph, trace: &SvTrace) -> String {
    let matches = trace
        .entries
        .iter()
        .map(|e| TraceStep {
            first: mg.name(e.matchup.first).to_string(),
            second: mg.name(e.matchup.second).to_string(),
            margin: e.matchup.margin,
            verdict: match e.verdict {
                Step::Qualified => "wins",
                Step::Failed => "loses",
                Step::Skipped => "not-reached",
            },
            sub_winners: names(mg, e.sub_winners),
        })
        .collect();
    to_json(&TraceDoc {
        winners: names(mg, trace.winners),
        deciding_margin: trace.deciding_margin(),
        matches,
    })
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Pass => "PASS".into(),
        Verdict::Fail => "FAIL".into(),
        Verdict::NotApplicable(why) => format!("n/a ({why})"),
    }
}

pub fn check_text(election: &Election, reports: &[CriteriaReport]) -> String {
    let mg = election.graph();
    let mut out = String::new();
    let _ = writeln!(out, "Election: {}", describe(election));
    for r in reports {
        let _ = writeln!(out, "\n{}: {}", r.method, listed(mg, r.winners));
        let stable = if r.stable.is_empty() {
            "none".to_string()
        } else {
            listed(mg, r.stable)
        };
        let _ = writeln!(out, "  stable candidates: {stable}");
        for (name, v) in [
            ("stability with tiebreaking", &r.stability),
            ("every winner stable", &r.stability_all_winners),
            ("Condorcet", &r.condorcet),
            ("Smith", &r.smith),
            ("Condorcet loser", &r.condorcet_loser),
            ("ISDA", &r.isda),
        ] {
            let _ = writeln!(out, "  {name:<27} {}", verdict_text(v));
        }
        for d in &r.isda_diffs {
            let _ = writeln!(
                out,
                "    removing {} changes the winners from {{{}}} to {{{}}}",
                mg.name(d.removed),
                listed(mg, d.before),
                listed(mg, d.after)
            );
        }
    }
    out
}

#[derive(Serialize)]
struct IsdaDoc {
    removed: String,
    before: Vec<String>,
    after: Vec<String>,
}

#[derive(Serialize)]
struct CheckDoc<'a> {
    method: MethodId,
    winners: Vec<String>,
    stable_candidates: Vec<String>,
    stability: &'a Verdict,
    stability_all_winners: &'a Verdict,
    condorcet: &'a Verdict,
    smith: &'a Verdict,
    condorcet_loser: &'a Verdict,
    isda: &'a Verdict,
    isda_diffs: Vec<IsdaDoc>,
}

pub fn check_json(election: &Election, reports: &[CriteriaReport]) -> String {
    let mg = election.graph();
    let docs: Vec<CheckDoc> = reports
        .iter()
        .map(|r| CheckDoc {
            method: r.method,
            winners: names(mg, r.winners),
            stable_candidates: names(mg, r.stable),
            stability: &r.stability,
            stability_all_winners: &r.stability_all_winners,
            condorcet: &r.condorcet,
            smith: &r.smith,
            condorcet_loser: &r.condorcet_loser,
            isda: &r.isda,
            isda_diffs: r
                .isda_diffs
                .iter()
                .map(|d| IsdaDoc {
                    removed: mg.name(d.removed).to_string(),
                    before: names(mg, d.before),
                    after: names(mg, d.after),
                })
                .collect(),
        })
        .collect();
    to_json(&docs)
}
