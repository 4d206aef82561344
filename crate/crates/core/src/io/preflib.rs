use std::fmt::Write as _;

use super::ParseError;
use crate::profile::{Ballot, Profile};
use crate::CandidateId;

/// Preflib order data types.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreflibKind {
    /// Strict orders, complete.
    Soc,
    /// Strict orders, incomplete.
    Soi,
    /// Orders with ties, complete.
    Toc,
    /// Orders with ties, incomplete.
    Toi,
}

impl PreflibKind {
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "soc" => Some(PreflibKind::Soc),
            "soi" => Some(PreflibKind::Soi),
            "toc" => Some(PreflibKind::Toc),
            "toi" => Some(PreflibKind::Toi),
            _ => None,
        }
    }

    /// Reads the `# DATA TYPE:` metadata line, if present.
    pub fn from_header(text: &str) -> Option<Self> {
        text.lines().find_map(|line| {
            let rest = line.trim().strip_prefix('#')?.trim();
            let value = rest.strip_prefix("DATA TYPE:")?;
            PreflibKind::from_extension(value.trim())
        })
    }

    pub fn extension(self) -> &'static str {
        match self {
            PreflibKind::Soc => "soc",
            PreflibKind::Soi => "soi",
            PreflibKind::Toc => "toc",
            PreflibKind::Toi => "toi",
        }
    }

    fn allows_ties(self) -> bool {
        matches!(self, PreflibKind::Toc | PreflibKind::Toi)
    }

    fn requires_complete(self) -> bool {
        matches!(self, PreflibKind::Soc | PreflibKind::Toc)
    }
}

/// A Preflib file as read, before completion into a [`Profile`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreflibDocument {
    pub kind: PreflibKind,
    pub names: Vec<String>,
    /// `(line number, count, tiers)` with 0-based candidate ids.
    pub lines: Vec<(usize, u64, Vec<Vec<CandidateId>>)>,
}

impl PreflibDocument {
    pub fn parse(text: &str, kind: PreflibKind) -> Result<Self, ParseError> {
        let lines: Vec<(usize, &str)> = text
            .split('\n')
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let modern = lines.iter().any(|(_, l)| l.starts_with('#'));
        let (names, body) = if modern {
            modern_header(&lines)?
        } else {
            legacy_header(&lines)?
        };
        let header_end = lines[..lines.len() - body.len()]
            .last()
            .map_or(1, |&(no, _)| no);
        crate::profile::check_roster(&names)
            .map_err(|e| ParseError::at_line(header_end, e.to_string()))?;
        let n = names.len();
        let mut out = Vec::new();
        for &(no, line) in body {
            let (count, ranking) = if modern {
                line.split_once(':')
            } else {
                line.split_once(',')
            }
            .ok_or_else(|| {
                ParseError::at_line(no, format!("expected `count: ranking`, got {line:?}"))
            })?;
            let count: i64 = count.trim().parse().map_err(|_| {
                ParseError::at_line(no, format!("invalid count {:?}", count.trim()))
            })?;
            if count <= 0 {
                return Err(ParseError::at_line(
                    no,
                    format!("count must be positive, got {count}"),
                ));
            }
            let tiers = parse_ranking(ranking, n, no)?;
            check_kind(kind, &tiers, n, no)?;
            out.push((no, count as u64, tiers));
        }
        Ok(PreflibDocument {
            kind,
            names,
            lines: out,
        })
    }

    /// Completes every ballot and builds the profile.
    pub fn to_profile(&self) -> Result<Profile, ParseError> {
        let mut ballots = Vec::with_capacity(self.lines.len());
        for (no, count, tiers) in &self.lines {
            ballots.push(
                Ballot::new(tiers.clone(), *count)
                    .map_err(|e| ParseError::at_line(*no, e.to_string()))?,
            );
        }
        let first = self.lines.first().map_or(1, |l| l.0);
        Profile::new(self.names.clone(), ballots)
            .map_err(|e| ParseError::at_line(first, e.to_string()))
    }
}

/// Numbered, non-blank lines.
type Lines<'a> = &'a [(usize, &'a str)];

fn modern_header<'a>(
    lines: &'a [(usize, &'a str)],
) -> Result<(Vec<String>, Lines<'a>), ParseError> {
    let mut declared: Option<usize> = None;
    let mut named: Vec<(usize, usize, String)> = Vec::new();
    let mut start = lines.len();
    for (i, &(no, line)) in lines.iter().enumerate() {
        let Some(meta) = line.strip_prefix('#') else {
            start = i;
            break;
        };
        let meta = meta.trim();
        if let Some(v) = meta.strip_prefix("NUMBER ALTERNATIVES:") {
            declared = Some(v.trim().parse().map_err(|_| {
                ParseError::at_line(no, format!("invalid number of alternatives {:?}", v.trim()))
            })?);
        } else if let Some(v) = meta.strip_prefix("ALTERNATIVE NAME") {
            let (num, name) = v
                .split_once(':')
                .ok_or_else(|| ParseError::at_line(no, "expected `# ALTERNATIVE NAME i: name`"))?;
            let num: usize = num.trim().parse().map_err(|_| {
                ParseError::at_line(no, format!("invalid alternative number {:?}", num.trim()))
            })?;
            named.push((no, num, name.trim().to_string()));
        }
    }
    if let Some(&(no, _)) = lines[start..].iter().find(|(_, l)| l.starts_with('#')) {
        return Err(ParseError::at_line(
            no,
            "metadata line after the first ballot line",
        ));
    }
    let n = declared
        .or_else(|| named.iter().map(|&(_, i, _)| i).max())
        .ok_or_else(|| ParseError::at_line(lines[0].0, "missing `# NUMBER ALTERNATIVES`"))?;
    if n == 0 {
        return Err(ParseError::at_line(
            lines[0].0,
            "an election needs at least one alternative",
        ));
    }
    if n > crate::MAX_CANDIDATES {
        return Err(ParseError::at_line(
            lines[0].0,
            format!(
                "{n} alternatives exceed the limit of {}",
                crate::MAX_CANDIDATES
            ),
        ));
    }
    let mut names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    for (no, i, name) in named {
        if i == 0 || i > n {
            return Err(ParseError::at_line(
                no,
                format!("alternative {i} is not among 1..={n}"),
            ));
        }
        names[i - 1] = name;
    }
    Ok((names, &lines[start..]))
}

fn legacy_header<'a>(
    lines: &'a [(usize, &'a str)],
) -> Result<(Vec<String>, Lines<'a>), ParseError> {
    let &(no, first) = lines
        .first()
        .ok_or_else(|| ParseError::at_line(1, "empty document"))?;
    let n: usize = first.parse().map_err(|_| {
        ParseError::at_line(
            no,
            format!("expected the number of candidates, got {first:?}"),
        )
    })?;
    if n == 0 {
        return Err(ParseError::at_line(
            no,
            "an election needs at least one candidate",
        ));
    }
    if n > crate::MAX_CANDIDATES {
        return Err(ParseError::at_line(
            no,
            format!(
                "{n} candidates exceed the limit of {}",
                crate::MAX_CANDIDATES
            ),
        ));
    }
    if lines.len() < n + 2 {
        let last = lines.last().map_or(1, |l| l.0);
        return Err(ParseError::at_line(
            last,
            format!("header ends early; expected {n} candidate lines and a summary line"),
        ));
    }
    let mut names: Vec<Option<String>> = vec![None; n];
    for &(no, line) in &lines[1..=n] {
        let (num, name) = line.split_once(',').ok_or_else(|| {
            ParseError::at_line(no, format!("expected `number,name`, got {line:?}"))
        })?;
        let num: usize = num.trim().parse().map_err(|_| {
            ParseError::at_line(no, format!("invalid candidate number {:?}", num.trim()))
        })?;
        if num == 0 || num > n {
            return Err(ParseError::at_line(
                no,
                format!("candidate {num} is not among 1..={n}"),
            ));
        }
        names[num - 1] = Some(name.trim().to_string());
    }
    let names = names
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            name.ok_or_else(|| {
                ParseError::at_line(lines[n].0, format!("candidate {} is never declared", i + 1))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    // The voter-count summary line is informational.
    let &(no, summary) = &lines[n + 1];
    if summary.split(',').count() != 3
        || summary.split(',').any(|t| t.trim().parse::<u64>().is_err())
    {
        return Err(ParseError::at_line(
            no,
            format!("expected `voters,total,unique`, got {summary:?}"),
        ));
    }
    Ok((names, &lines[n + 2..]))
}

/// `1,2,{3,4},5` with 1-based candidate numbers.
fn parse_ranking(text: &str, n: usize, no: usize) -> Result<Vec<Vec<CandidateId>>, ParseError> {
    let mut tiers = Vec::new();
    let mut group: Option<Vec<CandidateId>> = None;
    let mut token = String::new();
    let mut seen = vec![false; n];
    let mut push = |token: &mut String, dest: &mut Vec<CandidateId>| -> Result<(), ParseError> {
        let t = token.trim();
        if t.is_empty() {
            token.clear();
            return Ok(());
        }
        let num: usize = t
            .parse()
            .map_err(|_| ParseError::at_line(no, format!("invalid candidate {t:?}")))?;
        if num == 0 || num > n {
            return Err(ParseError::at_line(no, format!("unknown candidate {num}")));
        }
        if std::mem::replace(&mut seen[num - 1], true) {
            return Err(ParseError::at_line(
                no,
                format!("candidate {num} ranked twice"),
            ));
        }
        dest.push(num - 1);
        token.clear();
        Ok(())
    };
    let mut expect_sep = false;
    for ch in text.chars() {
        match (ch, group.as_mut()) {
            ('{', None) => {
                if !token.trim().is_empty() || expect_sep {
                    return Err(ParseError::at_line(no, "`{` must start a new position"));
                }
                group = Some(Vec::new());
            }
            ('{', Some(_)) => return Err(ParseError::at_line(no, "nested `{`")),
            ('}', Some(g)) => {
                push(&mut token, g)?;
                if g.is_empty() {
                    return Err(ParseError::at_line(no, "empty tie group `{}`"));
                }
                tiers.push(group.take().unwrap());
                expect_sep = true;
            }
            ('}', None) => return Err(ParseError::at_line(no, "unmatched `}`")),
            (',', Some(g)) => {
                if token.trim().is_empty() {
                    return Err(ParseError::at_line(no, "empty entry in tie group"));
                }
                push(&mut token, g)?;
            }
            (',', None) => {
                if expect_sep {
                    expect_sep = false;
                    continue;
                }
                if token.trim().is_empty() {
                    return Err(ParseError::at_line(no, "empty position in ranking"));
                }
                let mut single = Vec::new();
                push(&mut token, &mut single)?;
                tiers.push(single);
            }
            (c, _) => {
                if expect_sep && !c.is_whitespace() {
                    return Err(ParseError::at_line(no, "expected `,` after `}`"));
                }
                token.push(c);
            }
        }
    }
    if group.is_some() {
        return Err(ParseError::at_line(no, "unterminated `{`"));
    }
    if !token.trim().is_empty() {
        let mut single = Vec::new();
        push(&mut token, &mut single)?;
        tiers.push(single);
    } else if !expect_sep && !tiers.is_empty() {
        return Err(ParseError::at_line(no, "trailing `,` in ranking"));
    }
    if tiers.is_empty() {
        return Err(ParseError::at_line(no, "empty ranking"));
    }
    Ok(tiers)
}

fn check_kind(
    kind: PreflibKind,
    tiers: &[Vec<CandidateId>],
    n: usize,
    no: usize,
) -> Result<(), ParseError> {
    if !kind.allows_ties() && tiers.iter().any(|t| t.len() > 1) {
        return Err(ParseError::at_line(
            no,
            format!("ties are not allowed in {} data", kind.extension()),
        ));
    }
    let ranked: usize = tiers.iter().map(Vec::len).sum();
    if kind.requires_complete() && ranked != n {
        return Err(ParseError::at_line(
            no,
            format!(
                "{} data must rank all {n} candidates, this line ranks {ranked}",
                kind.extension()
            ),
        ));
    }
    Ok(())
}

/// Parses a Preflib document and completes truncated ballots.
pub fn parse_preflib(text: &str, kind: PreflibKind) -> Result<Profile, ParseError> {
    PreflibDocument::parse(text, kind)?.to_profile()
}

/// Writes a profile in the metadata-header Preflib format. Ballots are
/// already complete, so the data type is `soc` for linear profiles and `toc`
/// otherwise.
pub fn write_preflib(profile: &Profile, title: &str) -> String {
    let kind = if profile.ballots().iter().all(|b| b.is_linear()) {
        PreflibKind::Soc
    } else {
        PreflibKind::Toc
    };
    let mut out = String::new();
    let _ = writeln!(out, "# FILE NAME: {title}.{}", kind.extension());
    let _ = writeln!(out, "# DATA TYPE: {}", kind.extension());
    let _ = writeln!(out, "# NUMBER ALTERNATIVES: {}", profile.num_candidates());
    let _ = writeln!(out, "# NUMBER VOTERS: {}", profile.num_voters());
    let _ = writeln!(out, "# NUMBER UNIQUE ORDERS: {}", profile.ballots().len());
    for (i, name) in profile.names().iter().enumerate() {
        let _ = writeln!(out, "# ALTERNATIVE NAME {}: {name}", i + 1);
    }
    for ballot in profile.ballots() {
        let ranking: Vec<String> = ballot
            .tiers()
            .iter()
            .map(|tier| {
                if tier.len() == 1 {
                    (tier[0] + 1).to_string()
                } else {
                    let inner: Vec<String> = tier.iter().map(|c| (c + 1).to_string()).collect();
                    format!("{{{}}}", inner.join(","))
                }
            })
            .collect();
        let _ = writeln!(out, "{}: {}", ballot.count(), ranking.join(","));
    }
    out
}
