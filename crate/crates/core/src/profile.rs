//! Candidates, ballots and profiles.
//!
//! A ballot is a strict weak order: an ordered list of tiers, earlier tiers
//! strictly preferred, candidates inside one tier tied. Truncated ballots are
//! completed when a [`Profile`] is built by appending every unranked candidate
//! as one bottom tier, so all downstream code sees full weak orders.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::subset::{CandidateSet, MAX_CANDIDATES};
use crate::CandidateId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub id: CandidateId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ballot {
    tiers: Vec<Vec<CandidateId>>,
    count: u64,
}

impl Ballot {
    /// Builds a ballot from ordered tiers. Tier contents are sorted so equal
    /// weak orders compare equal.
    pub fn new(tiers: Vec<Vec<CandidateId>>, count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::ZeroCount);
        }
        if tiers.is_empty() {
            return Err(Error::EmptyRanking);
        }
        let mut seen = HashSet::new();
        let mut tiers = tiers;
        for tier in &mut tiers {
            if tier.is_empty() {
                return Err(Error::EmptyTier);
            }
            for &id in tier.iter() {
                if !seen.insert(id) {
                    return Err(Error::RepeatedCandidate { id });
                }
            }
            tier.sort_unstable();
        }
        Ok(Ballot { tiers, count })
    }

    /// A linear (possibly truncated) order, one candidate per tier.
    pub fn linear(order: &[CandidateId], count: u64) -> Result<Self> {
        Ballot::new(order.iter().map(|&c| vec![c]).collect(), count)
    }

    pub fn tiers(&self) -> &[Vec<CandidateId>] {
        &self.tiers
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// True when every tier is a singleton.
    pub fn is_linear(&self) -> bool {
        self.tiers.iter().all(|t| t.len() == 1)
    }

    /// Tier index of every candidate, `usize::MAX` for candidates not on the
    /// ballot.
    pub fn positions(&self, n: usize) -> Vec<usize> {
        let mut pos = vec![usize::MAX; n];
        for (level, tier) in self.tiers.iter().enumerate() {
            for &c in tier {
                pos[c] = level;
            }
        }
        pos
    }

    fn complete(&mut self, n: usize) {
        let ranked: CandidateSet = self.tiers.iter().flatten().copied().collect();
        let rest = CandidateSet::full(n).difference(ranked);
        if !rest.is_empty() {
            self.tiers.push(rest.to_vec());
        }
    }

    pub(crate) fn with_count(mut self, count: u64) -> Self {
        self.count = count;
        self
    }

    pub(crate) fn tiers_mut(&mut self) -> &mut Vec<Vec<CandidateId>> {
        &mut self.tiers
    }
}

/// A multiset of ballots over a fixed roster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    names: Vec<String>,
    ballots: Vec<Ballot>,
}

impl Profile {
    /// Validates the roster and ballots and completes truncated ballots.
    pub fn new(names: Vec<String>, ballots: Vec<Ballot>) -> Result<Self> {
        let n = names.len();
        check_roster(&names)?;
        let mut ballots = ballots;
        for ballot in &mut ballots {
            if let Some(&id) = ballot.tiers.iter().flatten().find(|&&c| c >= n) {
                return Err(Error::InvalidCandidate { id, n });
            }
            ballot.complete(n);
        }
        Ok(Profile { names, ballots })
    }

    /// Convenience constructor for single-letter style rosters.
    pub fn with_names<S: AsRef<str>>(names: &[S], ballots: Vec<Ballot>) -> Result<Self> {
        Profile::new(
            names.iter().map(|s| s.as_ref().to_string()).collect(),
            ballots,
        )
    }

    pub fn num_candidates(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: CandidateId) -> &str {
        &self.names[id]
    }

    pub fn candidates(&self) -> impl Iterator<Item = Candidate> + '_ {
        self.names.iter().enumerate().map(|(id, name)| Candidate {
            id,
            name: name.clone(),
        })
    }

    pub fn ballots(&self) -> &[Ballot] {
        &self.ballots
    }

    /// Total number of voters.
    pub fn num_voters(&self) -> u64 {
        self.ballots.iter().map(|b| b.count).sum()
    }

    pub fn id_of(&self, name: &str) -> Option<CandidateId> {
        self.names.iter().position(|n| n == name)
    }

    /// Voters ranking `a` strictly above `b` minus voters ranking `b`
    /// strictly above `a`.
    pub fn margin(&self, a: CandidateId, b: CandidateId) -> Result<i64> {
        let n = self.num_candidates();
        for id in [a, b] {
            if id >= n {
                return Err(Error::InvalidCandidate { id, n });
            }
        }
        let mut total = 0i64;
        for ballot in &self.ballots {
            let pos = ballot.positions(n);
            match pos[a].cmp(&pos[b]) {
                std::cmp::Ordering::Less => total += ballot.count as i64,
                std::cmp::Ordering::Greater => total -= ballot.count as i64,
                std::cmp::Ordering::Equal => {}
            }
        }
        Ok(total)
    }

    /// Keeps only the candidates in `keep`. Returns the restricted profile
    /// and the map from new ids to old ids.
    pub fn restrict(&self, keep: CandidateSet) -> Result<(Profile, Vec<CandidateId>)> {
        let n = self.num_candidates();
        let keep = keep.intersection(CandidateSet::full(n));
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        let ids = keep.to_vec();
        let mut new_id = vec![usize::MAX; n];
        for (new, &old) in ids.iter().enumerate() {
            new_id[old] = new;
        }
        let ballots = self
            .ballots
            .iter()
            .map(|ballot| {
                let tiers = ballot
                    .tiers
                    .iter()
                    .map(|tier| {
                        tier.iter()
                            .filter(|&&c| keep.contains(c))
                            .map(|&c| new_id[c])
                            .collect::<Vec<_>>()
                    })
                    .filter(|tier| !tier.is_empty())
                    .collect();
                Ballot {
                    tiers,
                    count: ballot.count,
                }
            })
            .collect();
        let names = ids.iter().map(|&c| self.names[c].clone()).collect();
        Ok((Profile { names, ballots }, ids))
    }

    /// Deletes `b` from every ballot and reindexes the roster densely.
    pub fn remove_candidate(&self, b: CandidateId) -> Result<(Profile, Vec<CandidateId>)> {
        let n = self.num_candidates();
        if b >= n {
            return Err(Error::InvalidCandidate { id: b, n });
        }
        if n < 2 {
            return Err(Error::RemoveLastCandidate);
        }
        self.restrict(CandidateSet::full(n).without(b))
    }

    /// Merges identical ballots and sorts them, giving a canonical form for
    /// comparing anonymous profiles.
    pub fn normalized(&self) -> Profile {
        let mut merged: BTreeMap<Vec<Vec<CandidateId>>, u64> = BTreeMap::new();
        for ballot in &self.ballots {
            *merged.entry(ballot.tiers.clone()).or_default() += ballot.count;
        }
        Profile {
            names: self.names.clone(),
            ballots: merged
                .into_iter()
                .map(|(tiers, count)| Ballot { tiers, count })
                .collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(names: Vec<String>, ballots: Vec<Ballot>) -> Profile {
        Profile { names, ballots }
    }

    pub(crate) fn ballots_mut(&mut self) -> &mut Vec<Ballot> {
        &mut self.ballots
    }
}

pub(crate) fn check_roster(names: &[String]) -> Result<()> {
    let n = names.len();
    if n == 0 {
        return Err(Error::NoCandidates);
    }
    if n > MAX_CANDIDATES {
        return Err(Error::TooManyCandidates {
            n,
            max: MAX_CANDIDATES,
        });
    }
    let mut seen = HashSet::new();
    for name in names {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    Ok(())
}
