//! Condorcet winners and losers and the Smith set.
//!
//! Every function comes in two forms: one on a whole [`MarginGraph`] and an
//! `_on` form restricted to a candidate subset, which the recursive
//! evaluators use without materializing restricted graphs.

use crate::margins::MarginGraph;
use crate::subset::CandidateSet;
use crate::CandidateId;

/// Smallest non-empty set whose members all beat every non-member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmithResult {
    pub members: CandidateSet,
}

pub fn condorcet_winner(mg: &MarginGraph) -> Option<CandidateId> {
    condorcet_winner_on(mg, mg.all())
}

pub fn condorcet_winner_on(mg: &MarginGraph, set: CandidateSet) -> Option<CandidateId> {
    set.iter()
        .find(|&a| set.iter().all(|b| b == a || mg.get(a, b) > 0))
}

pub fn condorcet_loser(mg: &MarginGraph) -> Option<CandidateId> {
    condorcet_loser_on(mg, mg.all())
}

pub fn condorcet_loser_on(mg: &MarginGraph, set: CandidateSet) -> Option<CandidateId> {
    if set.len() < 2 {
        return None;
    }
    set.iter()
        .find(|&a| set.iter().all(|b| b == a || mg.get(a, b) < 0))
}

/// Candidates with no head-to-head losses.
pub fn weak_condorcet_winners(mg: &MarginGraph) -> CandidateSet {
    weak_condorcet_winners_on(mg, mg.all())
}

pub fn weak_condorcet_winners_on(mg: &MarginGraph, set: CandidateSet) -> CandidateSet {
    set.iter()
        .filter(|&a| set.iter().all(|b| mg.get(a, b) >= 0))
        .collect()
}

pub fn smith_set(mg: &MarginGraph) -> SmithResult {
    SmithResult {
        members: smith_set_on(mg, mg.all()),
    }
}

/// Seeds with the maximal Copeland scorers, which always lie in the Smith
/// set, then pulls in every outsider that some member fails to beat.
pub fn smith_set_on(mg: &MarginGraph, set: CandidateSet) -> CandidateSet {
    if set.len() <= 1 {
        return set;
    }
    let copeland = |a: CandidateId| -> i64 { set.iter().map(|b| mg.get(a, b).signum()).sum() };
    let best = set.iter().map(copeland).max().unwrap_or(0);
    let mut smith: CandidateSet = set.iter().filter(|&a| copeland(a) == best).collect();
    loop {
        let outside = set.difference(smith);
        let pulled: CandidateSet = outside
            .iter()
            .filter(|&y| smith.iter().any(|x| mg.get(x, y) <= 0))
            .collect();
        if pulled.is_empty() {
            return smith;
        }
        smith = smith.union(pulled);
    }
}

/// True when every member of `inner` beats every candidate of `set` outside
/// it.
pub fn dominates(mg: &MarginGraph, inner: CandidateSet, set: CandidateSet) -> bool {
    let outer = set.difference(inner);
    inner.iter().all(|x| outer.iter().all(|y| mg.get(x, y) > 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn burlington() {
        let mg = fixtures::burlington();
        let montroll = mg.id_of("Montroll").unwrap();
        assert_eq!(condorcet_winner(&mg), Some(montroll));
        assert_eq!(
            weak_condorcet_winners(&mg),
            CandidateSet::singleton(montroll)
        );
        assert_eq!(condorcet_loser(&mg), mg.id_of("Simpson"));
        assert_eq!(smith_set(&mg).members, CandidateSet::singleton(montroll));
    }

    #[test]
    fn glasgow_cycle() {
        let mg = fixtures::glasgow_cycle();
        assert_eq!(condorcet_winner(&mg), None);
        assert!(weak_condorcet_winners(&mg).is_empty());
        assert_eq!(condorcet_loser(&mg), None);
        assert_eq!(smith_set(&mg).members, mg.all());
    }

    #[test]
    fn trivial_cases() {
        let one = MarginGraph::from_edges(&["A"], &[]).unwrap();
        assert_eq!(condorcet_winner(&one), Some(0));
        assert_eq!(condorcet_loser(&one), None);
        let zero = MarginGraph::from_edges(&["A", "B", "C"], &[]).unwrap();
        assert_eq!(weak_condorcet_winners(&zero), zero.all());
        assert_eq!(smith_set(&zero).members, zero.all());
        let two = MarginGraph::from_edges(&["A", "B"], &[(0, 1, 4)]).unwrap();
        assert_eq!(condorcet_loser(&two), Some(1));
    }

    #[test]
    fn ties_are_pulled_inside() {
        // A beats C and D; A and B tie; B beats C and D.
        let mg = MarginGraph::from_edges(
            &["A", "B", "C", "D"],
            &[(0, 2, 3), (0, 3, 3), (1, 2, 1), (1, 3, 1), (2, 3, 5)],
        )
        .unwrap();
        assert_eq!(smith_set(&mg).members.to_vec(), vec![0, 1]);
    }
}
