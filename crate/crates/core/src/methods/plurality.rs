use crate::error::{Error, Result};
use crate::profile::{Ballot, Profile};
use crate::subset::CandidateSet;
use crate::CandidateId;

/// The voter's top remaining candidate within `live`.
///
/// `Ok(None)` means the ballot is exhausted: nothing in `live` is ranked,
/// or every live candidate it still ranks sits in one tied tier with nothing
/// live below it. A tie at the top with live candidates below is an error.
pub(crate) fn top_choice(ballot: &Ballot, live: CandidateSet) -> Result<Option<CandidateId>> {
    let tiers = ballot.tiers();
    for (i, tier) in tiers.iter().enumerate() {
        let mut live_here = tier.iter().copied().filter(|&c| live.contains(c));
        let Some(first) = live_here.next() else {
            continue;
        };
        if live_here.next().is_none() {
            return Ok(Some(first));
        }
        let more_below = tiers[i + 1..].iter().flatten().any(|&c| live.contains(c));
        return if more_below {
            Err(Error::TiedTopTier)
        } else {
            Ok(None)
        };
    }
    Ok(None)
}

/// First-place votes among the `live` candidates, plus the number of
/// non-exhausted ballots.
pub fn first_place_counts(profile: &Profile, live: CandidateSet) -> Result<(Vec<u64>, u64)> {
    let mut counts = vec![0u64; profile.num_candidates()];
    let mut active = 0;
    for ballot in profile.ballots() {
        if let Some(c) = top_choice(ballot, live)? {
            counts[c] += ballot.count();
            active += ballot.count();
        }
    }
    Ok((counts, active))
}

/// Candidates with the most first-place votes.
pub fn plurality(profile: &Profile) -> Result<CandidateSet> {
    let all = CandidateSet::full(profile.num_candidates());
    let (counts, _) = first_place_counts(profile, all)?;
    let best = all.iter().map(|c| counts[c]).max().unwrap_or(0);
    Ok(all.iter().filter(|&c| counts[c] == best).collect())
}

/// Top two by first-place votes meet head-to-head.
///
/// Ties for the two runoff slots are resolved every possible way and the
/// runoff winners of all resolutions are returned together; a drawn runoff
/// returns both finalists.
pub fn plurality_runoff(profile: &Profile) -> Result<CandidateSet> {
    let n = profile.num_candidates();
    let all = CandidateSet::full(n);
    let (counts, _) = first_place_counts(profile, all)?;
    if n == 1 {
        return Ok(all);
    }
    let top = all.iter().map(|c| counts[c]).max().unwrap_or(0);
    let leaders: Vec<CandidateId> = all.iter().filter(|&c| counts[c] == top).collect();
    let mut pairs = Vec::new();
    if leaders.len() >= 2 {
        for (i, &a) in leaders.iter().enumerate() {
            for &b in &leaders[i + 1..] {
                pairs.push((a, b));
            }
        }
    } else {
        let leader = leaders[0];
        let second = all
            .iter()
            .filter(|&c| c != leader)
            .map(|c| counts[c])
            .max()
            .unwrap_or(0);
        for c in all.iter().filter(|&c| c != leader && counts[c] == second) {
            pairs.push((leader, c));
        }
    }
    let mut winners = CandidateSet::EMPTY;
    for (a, b) in pairs {
        let margin = profile.margin(a, b)?;
        if margin >= 0 {
            winners.insert(a);
        }
        if margin <= 0 {
            winners.insert(b);
        }
    }
    Ok(winners)
}
