use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::ParseError;
use crate::margins::MarginGraph;
use crate::profile::{Ballot, Profile};

pub const FORMAT_TAG: &str = "stable-tally/1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format: String,
    kind: String,
    candidates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ballots: Option<Vec<RawBallot>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    margins: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<RawEdge>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBallot {
    count: u64,
    ranking: Vec<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    winner: String,
    loser: String,
    margin: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JsonDocument {
    Profile(Profile),
    MarginGraph(MarginGraph),
}

fn read_raw(text: &str) -> Result<RawDocument, ParseError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let field = if path == "." { "$".to_string() } else { path };
        ParseError::at_field(field, inner.to_string())
    })?;
    if raw.format != FORMAT_TAG {
        return Err(ParseError::at_field(
            "format",
            format!("expected {FORMAT_TAG:?}, got {:?}", raw.format),
        ));
    }
    Ok(raw)
}

/// Parses either JSON document kind.
pub fn parse_json(text: &str) -> Result<JsonDocument, ParseError> {
    let raw = read_raw(text)?;
    match raw.kind.as_str() {
        "profile" => profile_from_raw(raw).map(JsonDocument::Profile),
        "margin-graph" => graph_from_raw(raw).map(JsonDocument::MarginGraph),
        other => Err(ParseError::at_field(
            "kind",
            format!("expected \"profile\" or \"margin-graph\", got {other:?}"),
        )),
    }
}

pub fn parse_profile_json(text: &str) -> Result<Profile, ParseError> {
    match parse_json(text)? {
        JsonDocument::Profile(p) => Ok(p),
        JsonDocument::MarginGraph(_) => Err(ParseError::at_field("kind", "expected \"profile\"")),
    }
}

pub fn parse_margin_graph(text: &str) -> Result<MarginGraph, ParseError> {
    match parse_json(text)? {
        JsonDocument::MarginGraph(g) => Ok(g),
        JsonDocument::Profile(_) => Err(ParseError::at_field("kind", "expected \"margin-graph\"")),
    }
}

fn name_index(names: &[String]) -> Result<HashMap<&str, usize>, ParseError> {
    let mut index = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(ParseError::at_field(
                format!("candidates[{i}]"),
                format!("duplicate candidate {name:?}"),
            ));
        }
    }
    if names.is_empty() {
        return Err(ParseError::at_field(
            "candidates",
            "at least one candidate is required",
        ));
    }
    Ok(index)
}

fn profile_from_raw(raw: RawDocument) -> Result<Profile, ParseError> {
    if raw.margins.is_some() || raw.edges.is_some() {
        return Err(ParseError::at_field("margins", "not allowed in a profile"));
    }
    let index = name_index(&raw.candidates)?;
    let raw_ballots = raw
        .ballots
        .ok_or_else(|| ParseError::at_field("ballots", "missing field"))?;
    let mut ballots = Vec::with_capacity(raw_ballots.len());
    for (i, b) in raw_ballots.into_iter().enumerate() {
        let mut tiers = Vec::with_capacity(b.ranking.len());
        for (j, tier) in b.ranking.iter().enumerate() {
            let mut ids = Vec::with_capacity(tier.len());
            for (k, name) in tier.iter().enumerate() {
                let id = *index.get(name.as_str()).ok_or_else(|| {
                    ParseError::at_field(
                        format!("ballots[{i}].ranking[{j}][{k}]"),
                        format!("unknown candidate {name:?}"),
                    )
                })?;
                ids.push(id);
            }
            tiers.push(ids);
        }
        let ballot = Ballot::new(tiers, b.count)
            .map_err(|e| ParseError::at_field(format!("ballots[{i}]"), e.to_string()))?;
        ballots.push(ballot);
    }
    Profile::new(raw.candidates, ballots)
        .map_err(|e| ParseError::at_field("candidates", e.to_string()))
}

fn graph_from_raw(raw: RawDocument) -> Result<MarginGraph, ParseError> {
    if raw.ballots.is_some() {
        return Err(ParseError::at_field(
            "ballots",
            "not allowed in a margin graph",
        ));
    }
    let index = name_index(&raw.candidates)?;
    let n = raw.candidates.len();
    let matrix = match (raw.margins, raw.edges) {
        (Some(m), None) => {
            if m.len() != n {
                return Err(ParseError::at_field(
                    "margins",
                    format!("expected {n} rows, got {}", m.len()),
                ));
            }
            if let Some(i) = m.iter().position(|row| row.len() != n) {
                return Err(ParseError::at_field(
                    format!("margins[{i}]"),
                    format!("expected {n} entries, got {}", m[i].len()),
                ));
            }
            m
        }
        (None, Some(edges)) => {
            let mut m = vec![vec![0i64; n]; n];
            let mut set = vec![vec![false; n]; n];
            for (i, e) in edges.iter().enumerate() {
                let lookup = |name: &str, field: &str| {
                    index.get(name).copied().ok_or_else(|| {
                        ParseError::at_field(
                            format!("edges[{i}].{field}"),
                            format!("unknown candidate {name:?}"),
                        )
                    })
                };
                let a = lookup(&e.winner, "winner")?;
                let b = lookup(&e.loser, "loser")?;
                if a == b {
                    return Err(ParseError::at_field(format!("edges[{i}]"), "self-loop"));
                }
                if set[a][b] {
                    return Err(ParseError::at_field(
                        format!("edges[{i}]"),
                        format!("pair ({}, {}) given twice", e.winner, e.loser),
                    ));
                }
                set[a][b] = true;
                set[b][a] = true;
                m[a][b] = e.margin;
                m[b][a] = -e.margin;
            }
            m
        }
        (Some(_), Some(_)) => {
            return Err(ParseError::at_field(
                "edges",
                "give either margins or edges, not both",
            ))
        }
        (None, None) => return Err(ParseError::at_field("margins", "missing field")),
    };
    MarginGraph::new(raw.candidates, matrix)
        .map_err(|e| ParseError::at_field("margins", e.to_string()))
}

/// Serializes a profile; ballots are written with their completed tiers.
pub fn write_profile_json(profile: &Profile) -> String {
    let names = profile.names();
    let raw = RawDocument {
        format: FORMAT_TAG.into(),
        kind: "profile".into(),
        candidates: names.to_vec(),
        ballots: Some(
            profile
                .ballots()
                .iter()
                .map(|b| RawBallot {
                    count: b.count(),
                    ranking: b
                        .tiers()
                        .iter()
                        .map(|t| t.iter().map(|&c| names[c].clone()).collect())
                        .collect(),
                })
                .collect(),
        ),
        margins: None,
        edges: None,
    };
    serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
}

pub fn write_margin_graph(mg: &MarginGraph) -> String {
    let raw = RawDocument {
        format: FORMAT_TAG.into(),
        kind: "margin-graph".into(),
        candidates: mg.names().to_vec(),
        ballots: None,
        margins: Some(mg.matrix()),
        edges: None,
    };
    serde_json::to_string_pretty(&raw).expect("serializable") + "\n"
}
