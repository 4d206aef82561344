//! Per-election audits of the classic Condorcet-family criteria and of
//! stability for winners with tiebreaking.

use serde::Serialize;

use crate::error::Result;
use crate::methods::{evaluate, lift_ids, Election, MethodId, MethodOptions};
use crate::subset::CandidateSet;
use crate::tournament::{condorcet_loser, condorcet_winner, smith_set_on};
use crate::CandidateId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "verdict", content = "reason")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable(String),
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_fail(&self) -> bool {
        *self == Verdict::Fail
    }
}

/// Winners before and after removing one candidate outside the Smith set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsdaDiff {
    pub removed: CandidateId,
    pub before: CandidateSet,
    pub after: CandidateSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaReport {
    pub method: MethodId,
    pub winners: CandidateSet,
    /// Candidates `A` with some `B` such that `A` beats `B` and `A` wins
    /// once `B` is removed.
    pub stable: CandidateSet,
    /// If any candidate is stable, some winner is stable.
    pub stability: Verdict,
    /// If any candidate is stable, every winner is stable.
    pub stability_all_winners: Verdict,
    pub condorcet: Verdict,
    pub smith: Verdict,
    pub condorcet_loser: Verdict,
    pub isda: Verdict,
    /// Every removal of a non-Smith candidate that changed the winners.
    pub isda_diffs: Vec<IsdaDiff>,
}

impl CriteriaReport {
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (name, v) in [
            ("stability", &self.stability),
            ("condorcet", &self.condorcet),
            ("smith", &self.smith),
            ("condorcet-loser", &self.condorcet_loser),
            ("isda", &self.isda),
        ] {
            if v.is_fail() {
                out.push(name);
            }
        }
        out
    }
}

/// Winners of `method` once each candidate is removed, in original ids.
fn winners_without_each(
    method: MethodId,
    election: &Election,
    opts: &MethodOptions,
) -> Result<Vec<CandidateSet>> {
    (0..election.num_candidates())
        .map(|b| {
            let (sub, ids) = election.without(b)?;
            Ok(lift_ids(evaluate(method, &sub, opts)?, &ids))
        })
        .collect()
}

pub fn check_criteria(
    election: &Election,
    method: MethodId,
    opts: &MethodOptions,
) -> Result<CriteriaReport> {
    let mg = election.graph();
    let n = mg.num_candidates();
    let all = mg.all();
    let winners = evaluate(method, election, opts)?;
    let without = if n >= 2 {
        winners_without_each(method, election, opts)?
    } else {
        Vec::new()
    };

    let stable: CandidateSet = all
        .iter()
        .filter(|&a| (0..n).any(|b| b != a && mg.get(a, b) > 0 && without[b].contains(a)))
        .collect();
    let (stability, stability_all_winners) = if stable.is_empty() {
        (Verdict::Pass, Verdict::Pass)
    } else {
        (
            Verdict::from_bool(!winners.intersection(stable).is_empty()),
            Verdict::from_bool(winners.is_subset(stable)),
        )
    };

    let condorcet = match condorcet_winner(mg) {
        Some(cw) => Verdict::from_bool(winners == CandidateSet::singleton(cw)),
        None => Verdict::Pass,
    };
    let smith_set = smith_set_on(mg, all);
    let smith = Verdict::from_bool(winners.is_subset(smith_set));
    let condorcet_loser = match condorcet_loser(mg) {
        Some(cl) => Verdict::from_bool(!winners.contains(cl)),
        None => Verdict::Pass,
    };

    let isda_diffs: Vec<IsdaDiff> = all
        .difference(smith_set)
        .iter()
        .filter(|&b| without[b] != winners)
        .map(|b| IsdaDiff {
            removed: b,
            before: winners,
            after: without[b],
        })
        .collect();
    let isda = if mg.is_uniquely_weighted() {
        Verdict::from_bool(isda_diffs.is_empty())
    } else {
        Verdict::NotApplicable("not uniquely weighted".into())
    };

    Ok(CriteriaReport {
        method,
        winners,
        stable,
        stability,
        stability_all_winners,
        condorcet,
        smith,
        condorcet_loser,
        isda,
        isda_diffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::margins::MarginGraph;

    fn check(mg: MarginGraph, m: MethodId) -> CriteriaReport {
        check_criteria(&Election::from_graph(mg), m, &MethodOptions::default()).unwrap()
    }

    #[test]
    fn five_candidates() {
        let sv = check(fixtures::five_candidate_cycles(), MethodId::StableVoting);
        assert!(sv.failures().is_empty());
        assert!(sv.stable.contains(0));
        let bp = check(fixtures::five_candidate_cycles(), MethodId::BeatPath);
        assert_eq!(bp.winners.to_vec(), vec![1]);
        assert_eq!(bp.stability, Verdict::Fail);
        assert!(!bp.stable.contains(1));
        let rp = check(fixtures::five_candidate_cycles(), MethodId::RankedPairs);
        assert_eq!(rp.stability, Verdict::Fail);
    }

    #[test]
    fn symmetric_cycle_isda_not_applicable() {
        let r = check(
            fixtures::symmetric_cycle_with_loser(),
            MethodId::StableVoting,
        );
        assert_eq!(
            r.isda,
            Verdict::NotApplicable("not uniquely weighted".into())
        );
        assert_eq!(
            r.isda_diffs,
            vec![IsdaDiff {
                removed: 3,
                before: CandidateSet::singleton(0),
                after: CandidateSet::full(3),
            }]
        );
    }

    #[test]
    fn two_candidates_pass_everything() {
        let mg = MarginGraph::from_edges(&["A", "B"], &[(0, 1, 3)]).unwrap();
        for m in [
            MethodId::StableVoting,
            MethodId::BeatPath,
            MethodId::Minimax,
            MethodId::RankedPairs,
        ] {
            let r = check(mg.clone(), m);
            assert!(r.failures().is_empty(), "{m}");
        }
    }

    #[test]
    fn single_candidate() {
        let mg = MarginGraph::from_edges(&["A"], &[]).unwrap();
        let r = check(mg, MethodId::StableVoting);
        assert!(r.failures().is_empty());
        assert!(r.stable.is_empty());
    }
}
