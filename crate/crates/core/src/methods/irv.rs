use std::collections::HashMap;

use super::lift_ids;
use super::plurality::first_place_counts;
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::subset::CandidateSet;
use crate::tournament::smith_set_on;

fn check_not_exhausted(profile: &Profile) -> Result<()> {
    let all = CandidateSet::full(profile.num_candidates());
    let (_, active) = first_place_counts(profile, all)?;
    if active == 0 && profile.num_candidates() > 1 {
        return Err(Error::AllBallotsExhausted);
    }
    Ok(())
}

fn fewest_firsts(profile: &Profile, live: CandidateSet) -> Result<CandidateSet> {
    let (counts, _) = first_place_counts(profile, live)?;
    let min = live.iter().map(|c| counts[c]).min().unwrap_or(0);
    Ok(live.iter().filter(|&c| counts[c] == min).collect())
}

/// Parallel-universe IRV: `A` wins if `A` is the only candidate left, or if
/// eliminating some candidate with the fewest first-place votes leads to a
/// profile where `A` wins. These are the candidates a lottery tiebreak could
/// elect.
pub fn irv_put(profile: &Profile) -> Result<CandidateSet> {
    check_not_exhausted(profile)?;
    let mut memo = HashMap::new();
    put(
        profile,
        CandidateSet::full(profile.num_candidates()),
        &mut memo,
    )
}

fn put(
    profile: &Profile,
    live: CandidateSet,
    memo: &mut HashMap<CandidateSet, CandidateSet>,
) -> Result<CandidateSet> {
    if live.len() == 1 {
        return Ok(live);
    }
    if let Some(&w) = memo.get(&live) {
        return Ok(w);
    }
    let mut winners = CandidateSet::EMPTY;
    for loser in fewest_firsts(profile, live)? {
        winners = winners.union(put(profile, live.without(loser), memo)?);
    }
    memo.insert(live, winners);
    Ok(winners)
}

/// IRV that eliminates every candidate tied for the fewest first-place votes
/// at once, unless that would eliminate everyone, in which case everyone
/// left wins.
pub fn irv_eliminate_all_tied(profile: &Profile) -> Result<CandidateSet> {
    check_not_exhausted(profile)?;
    let mut live = CandidateSet::full(profile.num_candidates());
    while live.len() > 1 {
        let losers = fewest_firsts(profile, live)?;
        if losers == live {
            break;
        }
        live = live.difference(losers);
    }
    Ok(live)
}

/// Parallel-universe IRV on the profile restricted to its Smith set.
pub fn smith_irv(profile: &Profile) -> Result<CandidateSet> {
    let mg = profile.margin_graph();
    let smith = smith_set_on(&mg, mg.all());
    let (restricted, ids) = profile.restrict(smith)?;
    Ok(lift_ids(irv_put(&restricted)?, &ids))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::profile::Ballot;

    fn linear(n: usize, ballots: &[(&[usize], u64)]) -> Profile {
        let names: Vec<String> = (0..n)
            .map(|i| ((b'A' + i as u8) as char).to_string())
            .collect();
        Profile::new(
            names,
            ballots
                .iter()
                .map(|(o, c)| Ballot::linear(o, *c).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_candidates() {
        let p = linear(2, &[(&[0, 1], 3), (&[1, 0], 2)]);
        assert_eq!(irv_put(&p).unwrap().to_vec(), vec![0]);
        let p = linear(2, &[(&[0, 1], 2), (&[1, 0], 2)]);
        assert_eq!(irv_put(&p).unwrap().to_vec(), vec![0, 1]);
    }

    #[test]
    fn eliminate_all_tied_removes_both() {
        // A 5, B 4, C 1, D 1: C and D go together, then B's 4 + transfers.
        let p = linear(
            4,
            &[
                (&[0, 1, 2, 3], 5),
                (&[1, 0, 2, 3], 4),
                (&[2, 1, 0, 3], 1),
                (&[3, 1, 0, 2], 1),
            ],
        );
        assert_eq!(irv_eliminate_all_tied(&p).unwrap().to_vec(), vec![1]);
        // The parallel-universe version reaches the same final pair.
        assert_eq!(irv_put(&p).unwrap().to_vec(), vec![1]);
    }

    #[test]
    fn everyone_tied_for_fewest() {
        let p = linear(3, &[(&[0, 1, 2], 1), (&[1, 2, 0], 1), (&[2, 0, 1], 1)]);
        assert_eq!(irv_eliminate_all_tied(&p).unwrap().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn exhausted_profile_rejected() {
        let p = linear(3, &[]);
        assert_eq!(irv_put(&p), Err(Error::AllBallotsExhausted));
    }

    #[test]
    fn truncated_ballots_exhaust() {
        // B's voters rank only B; after B goes they stop counting.
        let p = linear(3, &[(&[0, 2], 4), (&[2, 0], 3), (&[1], 2)]);
        assert_eq!(irv_put(&p).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn glasgow_like() {
        let p = fixtures::glasgow_like();
        let name =
            |s: CandidateSet| -> Vec<String> { s.iter().map(|c| p.name(c).to_string()).collect() };
        assert_eq!(name(irv_put(&p).unwrap()), ["Hunter"]);
        assert_eq!(name(irv_eliminate_all_tied(&p).unwrap()), ["Hunter"]);
        // Inside the Smith set the others' ballots flow to Dornan, Flanagan
        // is eliminated first and Hunter beats Dornan by 21.
        assert_eq!(name(smith_irv(&p).unwrap()), ["Hunter"]);
    }

    #[test]
    fn smith_irv_elects_condorcet_winner() {
        // A is the Condorcet winner but has the fewest first places.
        let p = linear(3, &[(&[1, 0, 2], 4), (&[2, 0, 1], 3), (&[0, 2, 1], 2)]);
        let mg = p.margin_graph();
        assert_eq!(crate::tournament::condorcet_winner(&mg), Some(0));
        assert_eq!(irv_put(&p).unwrap().to_vec(), vec![2]);
        assert_eq!(smith_irv(&p).unwrap().to_vec(), vec![0]);
    }
}
