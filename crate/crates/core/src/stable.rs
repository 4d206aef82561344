//! Stable Voting.
//!
//! Matches `A vs. B` are scanned from the largest to the smallest margin of
//! `A` over `B`. The winners are every `A` that wins the sub-election with
//! `B` removed, taken at the first margin level where any such `A` exists.
//! A sub-election winner here means membership in the sub-election's winner
//! set, so tied sub-elections still qualify each of their winners.
//!
//! Margins between surviving candidates do not change when a candidate is
//! removed, so the recursion runs on candidate subsets of one
//! [`MarginGraph`]. Each subset is solved once and memoized on its bit set.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::margins::MarginGraph;
use crate::subset::CandidateSet;
use crate::tournament::{smith_set_on, weak_condorcet_winners_on};
use crate::CandidateId;

/// Default cap on the size of any Smith set the evaluator will recurse into.
pub const DEFAULT_SMITH_CAP: usize = 12;

/// Which matches may supply a winner at each recursion node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchFilter {
    /// Every ordered pair.
    All,
    /// Only matches whose first candidate is in the node's Smith set. Never
    /// changes the winners, since winners always lie in the Smith set.
    SmithFirst,
    /// A unique weak Condorcet winner wins outright; several restrict the
    /// first candidate to them; none falls back to plain Stable Voting.
    WeakCondorcet,
}

/// Subset-keyed winner cache. Entries are written once.
#[derive(Debug, Default, Clone)]
pub struct MemoTable {
    map: HashMap<CandidateSet, CandidateSet>,
}

impl MemoTable {
    pub fn get(&self, set: CandidateSet) -> Option<CandidateSet> {
        self.map.get(&set).copied()
    }

    pub fn insert(&mut self, set: CandidateSet, winners: CandidateSet) {
        let prev = self.map.insert(set, winners);
        debug_assert!(prev.is_none() || prev == Some(winners));
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// One Stable Voting evaluation over a fixed margin graph.
pub struct SvEvaluator<'g> {
    mg: &'g MarginGraph,
    /// All ordered pairs by descending margin, ties by ids.
    order: Vec<(CandidateId, CandidateId)>,
    filter: MatchFilter,
    smith_cap: Option<usize>,
    memo: Option<MemoTable>,
    fallback: Option<Box<SvEvaluator<'g>>>,
}

impl<'g> SvEvaluator<'g> {
    pub fn new(mg: &'g MarginGraph, filter: MatchFilter) -> Self {
        let n = mg.num_candidates();
        let mut order: Vec<(CandidateId, CandidateId)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        order.sort_by(|&(a, b), &(c, d)| mg.get(c, d).cmp(&mg.get(a, b)).then((a, b).cmp(&(c, d))));
        let smith_cap = match filter {
            MatchFilter::All => None,
            _ => Some(DEFAULT_SMITH_CAP),
        };
        SvEvaluator {
            mg,
            order,
            filter,
            smith_cap,
            memo: Some(MemoTable::default()),
            fallback: None,
        }
    }

    /// Sets the Smith-set size cap; `None` disables it.
    pub fn smith_cap(mut self, cap: Option<usize>) -> Self {
        self.smith_cap = cap;
        self
    }

    /// Disables memoization. Exponentially slower; for cross-checks only.
    pub fn without_memo(mut self) -> Self {
        self.memo = None;
        self
    }

    pub fn memo(&self) -> Option<&MemoTable> {
        self.memo.as_ref()
    }

    pub fn winners(&mut self) -> Result<CandidateSet> {
        self.winners_on(self.mg.all())
    }

    /// Winners of the sub-election on `set`.
    pub fn winners_on(&mut self, set: CandidateSet) -> Result<CandidateSet> {
        if set.is_empty() {
            return Err(Error::EmptySubset);
        }
        if set.len() == 1 {
            return Ok(set);
        }
        if let Some(w) = self.memo.as_ref().and_then(|m| m.get(set)) {
            return Ok(w);
        }
        let winners = match self.filter {
            MatchFilter::All => self.scan(set, set)?,
            MatchFilter::SmithFirst => {
                let smith = smith_set_on(self.mg, set);
                self.check_cap(smith)?;
                if smith.len() == 1 {
                    smith
                } else {
                    self.scan(set, smith)?
                }
            }
            MatchFilter::WeakCondorcet => {
                let weak = weak_condorcet_winners_on(self.mg, set);
                match weak.len() {
                    0 => self.plain_fallback().winners_on(set)?,
                    1 => weak,
                    _ => {
                        let found = self.scan(set, weak)?;
                        if found.is_empty() {
                            self.plain_fallback().winners_on(set)?
                        } else {
                            found
                        }
                    }
                }
            }
        };
        debug_assert!(self.filter == MatchFilter::WeakCondorcet || !winners.is_empty());
        if let Some(memo) = self.memo.as_mut() {
            memo.insert(set, winners);
        }
        Ok(winners)
    }

    /// Walks the matches inside `set` whose first candidate is in `firsts`,
    /// one margin level at a time, and returns every qualifying first
    /// candidate of the earliest level that has one.
    fn scan(&mut self, set: CandidateSet, firsts: CandidateSet) -> Result<CandidateSet> {
        let mut found = CandidateSet::EMPTY;
        let mut level: Option<i64> = None;
        for i in 0..self.order.len() {
            let (a, b) = self.order[i];
            if !firsts.contains(a) || !set.contains(b) {
                continue;
            }
            let margin = self.mg.get(a, b);
            if level != Some(margin) {
                if !found.is_empty() {
                    return Ok(found);
                }
                level = Some(margin);
            }
            if found.contains(a) {
                continue;
            }
            if self.winners_on(set.without(b))?.contains(a) {
                found.insert(a);
            }
        }
        Ok(found)
    }

    fn check_cap(&self, smith: CandidateSet) -> Result<()> {
        match self.smith_cap {
            Some(cap) if smith.len() > cap => Err(Error::SmithCapExceeded {
                size: smith.len(),
                cap,
            }),
            _ => Ok(()),
        }
    }

    fn plain_fallback(&mut self) -> &mut SvEvaluator<'g> {
        let (mg, cap) = (self.mg, self.smith_cap);
        self.fallback.get_or_insert_with(|| {
            Box::new(SvEvaluator::new(mg, MatchFilter::SmithFirst).smith_cap(cap))
        })
    }
}

/// Stable Voting winners with the Smith-restricted match list and the
/// default Smith-set cap.
pub fn sv_winners(mg: &MarginGraph) -> Result<CandidateSet> {
    SvEvaluator::new(mg, MatchFilter::SmithFirst).winners()
}

/// Stable Voting over every ordered pair, no cap.
pub fn sv_winners_naive(mg: &MarginGraph) -> CandidateSet {
    SvEvaluator::new(mg, MatchFilter::All)
        .winners()
        .expect("uncapped evaluation of a non-empty graph")
}

/// Stable Voting after discarding every candidate outside the Smith set.
/// Agrees with [`sv_winners`] on uniquely weighted graphs; otherwise it may
/// lose tiebreaking power.
pub fn svs_winners(mg: &MarginGraph) -> Result<CandidateSet> {
    let smith = smith_set_on(mg, mg.all());
    SvEvaluator::new(mg, MatchFilter::SmithFirst).winners_on(smith)
}

/// The weak-Condorcet refinement: never elects outside the weak Condorcet
/// winners when there are any.
pub fn sv_weak_condorcet_variant(mg: &MarginGraph) -> Result<CandidateSet> {
    SvEvaluator::new(mg, MatchFilter::WeakCondorcet).winners()
}

/// Closed-form winners for exactly three candidates.
///
/// If some candidate has no losses, the winners are the loss-free candidates
/// whose largest margin is the largest among loss-free candidates.
/// Otherwise the three form a cycle and the candidate with the smallest loss
/// wins.
pub fn three_candidate_oracle(mg: &MarginGraph) -> Result<CandidateSet> {
    let n = mg.num_candidates();
    if n != 3 {
        return Err(Error::WrongCandidateCount {
            expected: 3,
            got: n,
        });
    }
    let others = |a: CandidateId| (0..3).filter(move |&b| b != a);
    let undefeated: Vec<CandidateId> = (0..3)
        .filter(|&a| others(a).all(|b| mg.get(a, b) >= 0))
        .collect();
    if !undefeated.is_empty() {
        let best_of = |a: CandidateId| others(a).map(|b| mg.get(a, b)).max().unwrap();
        let best = undefeated.iter().map(|&a| best_of(a)).max().unwrap();
        return Ok(undefeated
            .into_iter()
            .filter(|&a| best_of(a) == best)
            .collect());
    }
    let loss = |a: CandidateId| others(a).map(|b| mg.get(b, a)).max().unwrap();
    let smallest = (0..3).map(loss).min().unwrap();
    Ok((0..3).filter(|&a| loss(a) == smallest).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The first candidate wins the sub-election.
    Qualified,
    /// The first candidate does not win the sub-election.
    Failed,
    /// Below the deciding margin level; never evaluated.
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Match {
    pub first: CandidateId,
    pub second: CandidateId,
    pub margin: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub matchup: Match,
    pub examined: bool,
    /// Winners of the sub-election without `second`; empty when skipped.
    pub sub_winners: CandidateSet,
    pub verdict: Verdict,
}

/// Full descending-margin match list with the outcome of each examined
/// match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvTrace {
    pub entries: Vec<TraceEntry>,
    pub winners: CandidateSet,
}

impl SvTrace {
    /// Recomputes the winners from the entries alone.
    pub fn replay(&self) -> CandidateSet {
        if self.entries.is_empty() {
            return self.winners;
        }
        self.entries
            .iter()
            .filter(|e| e.verdict == Verdict::Qualified)
            .map(|e| e.matchup.first)
            .collect()
    }

    pub fn deciding_margin(&self) -> Option<i64> {
        self.entries
            .iter()
            .find(|e| e.verdict == Verdict::Qualified)
            .map(|e| e.matchup.margin)
    }

    pub fn examined(&self) -> impl Iterator<Item = &TraceEntry> {
        self.entries.iter().filter(|e| e.examined)
    }

    /// Numbered plain-text explanation. Matches after the deciding level are
    /// marked `[not reached]`.
    pub fn render(&self, mg: &MarginGraph) -> String {
        let name = |c: CandidateId| mg.name(c);
        if self.entries.is_empty() {
            let only: Vec<&str> = self.winners.iter().map(name).collect();
            return format!(
                "{} is the only candidate and is elected.\n",
                only.join(", ")
            );
        }
        let mut out = String::new();
        for (i, e) in self.entries.iter().enumerate() {
            let Match {
                first,
                second,
                margin,
            } = e.matchup;
            let (x, y) = (name(first), name(second));
            let _ = write!(out, "{}. {x} vs. {y}: margin of {margin}.", i + 1);
            let sub = mg.all().without(second);
            match e.verdict {
                Verdict::Skipped => out.push_str(" [not reached]\n"),
                Verdict::Failed => {
                    let _ = writeln!(
                        out,
                        "\n   {x} loses (to {}) after removing {y}. Continue to next match:",
                        join_names(mg, e.sub_winners)
                    );
                }
                Verdict::Qualified => {
                    let against = if sub.len() == 2 {
                        format!(
                            " (against {})",
                            name(sub.without(first).first().expect("two left"))
                        )
                    } else {
                        String::new()
                    };
                    let elected = if self.winners.len() == 1 {
                        format!("{x} is elected.")
                    } else {
                        format!(
                            "{x} is elected in a tie with {}.",
                            join_names(mg, self.winners.without(first))
                        )
                    };
                    let _ = writeln!(out, "\n   {x} wins{against} after removing {y}. {elected}");
                }
            }
        }
        out
    }
}

fn join_names(mg: &MarginGraph, set: CandidateSet) -> String {
    let names: Vec<&str> = set.iter().map(|c| mg.name(c)).collect();
    match names.split_last() {
        None => String::new(),
        Some((last, [])) => (*last).to_string(),
        Some((last, rest)) => format!("{} and {last}", rest.join(", ")),
    }
}

/// Explains a Stable Voting outcome match by match.
pub fn sv_trace(mg: &MarginGraph) -> Result<SvTrace> {
    sv_trace_with_cap(mg, Some(DEFAULT_SMITH_CAP))
}

pub fn sv_trace_with_cap(mg: &MarginGraph, smith_cap: Option<usize>) -> Result<SvTrace> {
    let mut eval = SvEvaluator::new(mg, MatchFilter::SmithFirst).smith_cap(smith_cap);
    let all = mg.all();
    if all.len() == 1 {
        return Ok(SvTrace {
            entries: Vec::new(),
            winners: all,
        });
    }
    let order = eval.order.clone();
    let mut entries = Vec::with_capacity(order.len());
    let mut decided: Option<i64> = None;
    for (a, b) in order {
        let margin = mg.get(a, b);
        let matchup = Match {
            first: a,
            second: b,
            margin,
        };
        if decided.is_some_and(|level| margin < level) {
            entries.push(TraceEntry {
                matchup,
                examined: false,
                sub_winners: CandidateSet::EMPTY,
                verdict: Verdict::Skipped,
            });
            continue;
        }
        let sub_winners = eval.winners_on(all.without(b))?;
        let verdict = if sub_winners.contains(a) {
            decided.get_or_insert(margin);
            Verdict::Qualified
        } else {
            Verdict::Failed
        };
        entries.push(TraceEntry {
            matchup,
            examined: true,
            sub_winners,
            verdict,
        });
    }
    let trace = SvTrace {
        winners: eval.winners()?,
        entries,
    };
    debug_assert_eq!(trace.replay(), trace.winners);
    Ok(trace)
}
