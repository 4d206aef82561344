use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::{candidate_names, cell_seed, sample_linear_profile, SamplerSpec};
use crate::error::{Error, Result};
use crate::methods::{evaluate, Election, MethodId, MethodOptions};
use crate::profile::{Ballot, Profile};
use crate::subset::CandidateSet;
use crate::CandidateId;

/// Largest number of profiles an exhaustive run may enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub method: MethodId,
    pub candidates: usize,
    /// Voter counts pooled into this row.
    pub voters: Vec<usize>,
    pub samples: u64,
    pub hits: u64,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub experiment: String,
    pub seed: u64,
    pub samples_per_point: u64,
    pub exhaustive: bool,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentResult {
    /// One line per row; the `voters` column holds the smallest pooled count.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,candidates,voters,samples,hits,rate\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6}",
                r.method,
                r.candidates,
                r.voters.iter().min().copied().unwrap_or(0),
                r.samples,
                r.hits,
                r.rate
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn row(
        &self,
        method: MethodId,
        candidates: usize,
        voters: usize,
    ) -> Option<&ExperimentRow> {
        self.rows.iter().find(|r| {
            r.method == method && r.candidates == candidates && r.voters.contains(&voters)
        })
    }
}

fn make_row(
    method: MethodId,
    candidates: usize,
    voters: Vec<usize>,
    samples: u64,
    hits: u64,
) -> ExperimentRow {
    let rate = if samples == 0 {
        0.0
    } else {
        hits as f64 / samples as f64
    };
    ExperimentRow {
        method,
        candidates,
        voters,
        samples,
        hits,
        rate,
    }
}

fn check_grid(candidate_counts: &[usize], voter_counts: &[usize], samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::InvalidGrid("sample count must be at least 1".into()));
    }
    if candidate_counts.is_empty() || voter_counts.is_empty() {
        return Err(Error::InvalidGrid("empty grid".into()));
    }
    if let Some(&n) = candidate_counts.iter().find(|&&n| n == 0 || n > 20) {
        return Err(Error::InvalidGrid(format!(
            "candidate count {n} outside 1..=20"
        )));
    }
    if voter_counts.contains(&0) {
        return Err(Error::InvalidGrid("voter count must be at least 1".into()));
    }
    Ok(())
}

/// The even and odd voter counts pooled for a requested count.
pub fn parity_pair(voters: usize) -> Vec<usize> {
    let even = voters - voters % 2;
    if even == 0 {
        vec![1]
    } else {
        vec![even, even + 1]
    }
}

/// Counts a hit whenever a method returns more than one winner.
fn count_ties(
    methods: &[MethodId],
    profiles: impl ParallelIterator<Item = Profile>,
    opts: &MethodOptions,
) -> Result<Vec<u64>> {
    profiles
        .map(|p| {
            let e = Election::from_profile(p);
            methods
                .iter()
                .map(|&m| Ok(u64::from(evaluate(m, &e, opts)?.len() >= 2)))
                .collect::<Result<Vec<u64>>>()
        })
        .try_reduce(
            || vec![0; methods.len()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                Ok(a)
            },
        )
}

/// Multi-winner tie frequency under impartial culture. Each requested voter
/// count is pooled with its parity partner, with `samples_per_parity`
/// profiles drawn at each.
pub fn tie_rate_experiment(
    methods: &[MethodId],
    candidate_counts: &[usize],
    voter_counts: &[usize],
    samples_per_parity: u64,
    seed: u64,
    opts: &MethodOptions,
) -> Result<ExperimentResult> {
    check_grid(candidate_counts, voter_counts, samples_per_parity)?;
    let mut pairs: Vec<Vec<usize>> = voter_counts.iter().map(|&v| parity_pair(v)).collect();
    pairs.sort();
    pairs.dedup();

    let mut rows = Vec::new();
    for &n in candidate_counts {
        for pair in &pairs {
            let mut hits = vec![0u64; methods.len()];
            for &v in pair {
                let spec = SamplerSpec::impartial_culture(n, v, cell_seed(seed, n, v));
                let counts = count_ties(
                    methods,
                    (0..samples_per_parity)
                        .into_par_iter()
                        .map(|i| sample_linear_profile(&spec, i)),
                    opts,
                )?;
                hits.iter_mut().zip(counts).for_each(|(h, c)| *h += c);
            }
            let samples = samples_per_parity * pair.len() as u64;
            for (&m, &h) in methods.iter().zip(&hits) {
                rows.push(make_row(m, n, pair.clone(), samples, h));
            }
        }
    }
    Ok(ExperimentResult {
        experiment: "tie-rate".into(),
        seed,
        samples_per_point: samples_per_parity,
        exhaustive: false,
        rows,
    })
}

fn permutations(n: usize) -> Vec<Vec<CandidateId>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Exact tie frequencies over every profile of linear ballots with exactly
/// the given voter counts (voters distinguishable, so `(n!)^v` profiles).
pub fn exhaustive_tie_rates(
    methods: &[MethodId],
    candidate_counts: &[usize],
    voter_counts: &[usize],
    opts: &MethodOptions,
) -> Result<ExperimentResult> {
    check_grid(candidate_counts, voter_counts, 1)?;
    let mut rows = Vec::new();
    for &n in candidate_counts {
        let orders = permutations(n);
        let k = orders.len() as u64;
        for &v in voter_counts {
            let total = u32::try_from(v)
                .ok()
                .and_then(|v| k.checked_pow(v))
                .filter(|&t| t <= EXHAUSTIVE_LIMIT)
                .ok_or_else(|| {
                    Error::InvalidGrid(format!(
                        "{n} candidates and {v} voters exceed the exhaustive limit of {EXHAUSTIVE_LIMIT} profiles"
                    ))
                })?;
            let names = candidate_names(n);
            let profile_at = |mut idx: u64| {
                let ballots = (0..v)
                    .map(|_| {
                        let o = &orders[(idx % k) as usize];
                        idx /= k;
                        Ballot::linear(o, 1).expect("permutation")
                    })
                    .collect();
                Profile::from_parts_unchecked(names.clone(), ballots)
            };
            let hits = count_ties(methods, (0..total).into_par_iter().map(profile_at), opts)?;
            for (&m, &h) in methods.iter().zip(&hits) {
                rows.push(make_row(m, n, vec![v], total, h));
            }
        }
    }
    Ok(ExperimentResult {
        experiment: "tie-rate".into(),
        seed: 0,
        samples_per_point: 0,
        exhaustive: true,
        rows,
    })
}

/// One voter: copy `copy` of the ballot at index `ballot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VoterRef {
    pub ballot: usize,
    pub copy: u64,
}

fn shift_one_position(
    profile: &Profile,
    voter: VoterRef,
    a: CandidateId,
    up: bool,
) -> Result<Profile> {
    let n = profile.num_candidates();
    if a >= n {
        return Err(Error::InvalidCandidate { id: a, n });
    }
    let ballot = profile
        .ballots()
        .get(voter.ballot)
        .filter(|b| voter.copy < b.count())
        .ok_or(Error::NoSuchVoter {
            ballot: voter.ballot,
            copy: voter.copy,
        })?;
    if !ballot.is_linear() {
        return Err(Error::NotLinear {
            ballot: voter.ballot,
        });
    }
    let pos = ballot
        .tiers()
        .iter()
        .position(|t| t[0] == a)
        .expect("complete ballot");
    let other = if up {
        pos.checked_sub(1).ok_or(Error::AlreadyFirst {
            ballot: voter.ballot,
            candidate: a,
        })?
    } else if pos + 1 < ballot.tiers().len() {
        pos + 1
    } else {
        return Err(Error::AlreadyLast {
            ballot: voter.ballot,
            candidate: a,
        });
    };
    let mut moved = ballot.clone().with_count(1);
    moved.tiers_mut().swap(pos, other);

    let mut out = profile.clone();
    let rest = ballot.count() - 1;
    let ballots = out.ballots_mut();
    ballots[voter.ballot] = moved;
    if rest > 0 {
        ballots.insert(voter.ballot + 1, ballot.clone().with_count(rest));
    }
    Ok(out)
}

/// Moves `a` up one place on one voter's ballot. If the ballot stands for
/// several voters, the moved voter is split off and keeps the reference
/// `(ballot, 0)`; the remaining copies follow at `ballot + 1`.
pub fn lift_one_position(profile: &Profile, voter: VoterRef, a: CandidateId) -> Result<Profile> {
    shift_one_position(profile, voter, a, true)
}

/// Moves `a` down one place on one voter's ballot. Undoes
/// [`lift_one_position`] up to [`Profile::normalized`].
pub fn lower_one_position(profile: &Profile, voter: VoterRef, a: CandidateId) -> Result<Profile> {
    shift_one_position(profile, voter, a, false)
}

/// A profile, a winner and a ballot on which lifting the winner one place
/// makes it lose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub candidate: CandidateId,
    /// The ballot before the lift, best first.
    pub ballot: Vec<CandidateId>,
    pub before: CandidateSet,
    pub after: CandidateSet,
}

/// Searches for a winner that some single-voter lift turns into a loser.
/// Voters with identical ballots are interchangeable, so each distinct
/// ballot is tried once.
pub fn monotonicity_violation(
    profile: &Profile,
    method: MethodId,
    opts: &MethodOptions,
) -> Result<Option<MonotonicityWitness>> {
    let profile = profile.normalized();
    let before = evaluate(method, &Election::from_profile(profile.clone()), opts)?;
    for a in before {
        for (i, b) in profile.ballots().iter().enumerate() {
            if !b.is_linear() {
                return Err(Error::NotLinear { ballot: i });
            }
            if b.tiers()[0][0] == a {
                continue;
            }
            let lifted = lift_one_position(&profile, VoterRef { ballot: i, copy: 0 }, a)?;
            let after = evaluate(method, &Election::from_profile(lifted), opts)?;
            if !after.contains(a) {
                return Ok(Some(MonotonicityWitness {
                    candidate: a,
                    ballot: b.tiers().iter().map(|t| t[0]).collect(),
                    before,
                    after,
                }));
            }
        }
    }
    Ok(None)
}

/// Frequency of profiles with a monotonicity violation, one grid point per
/// exact voter count.
pub fn monotonicity_experiment(
    methods: &[MethodId],
    num_candidates: usize,
    voter_counts: &[usize],
    samples: u64,
    seed: u64,
    opts: &MethodOptions,
) -> Result<ExperimentResult> {
    check_grid(&[num_candidates], voter_counts, samples)?;
    let mut counts: Vec<usize> = voter_counts.to_vec();
    counts.sort_unstable();
    counts.dedup();
    let mut rows = Vec::new();
    for &v in &counts {
        let spec =
            SamplerSpec::impartial_culture(num_candidates, v, cell_seed(seed, num_candidates, v));
        let hits = (0..samples)
            .into_par_iter()
            .map(|i| {
                let p = sample_linear_profile(&spec, i);
                methods
                    .iter()
                    .map(|&m| Ok(u64::from(monotonicity_violation(&p, m, opts)?.is_some())))
                    .collect::<Result<Vec<u64>>>()
            })
            .try_reduce(
                || vec![0; methods.len()],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    Ok(a)
                },
            )?;
        for (&m, &h) in methods.iter().zip(&hits) {
            rows.push(make_row(m, num_candidates, vec![v], samples, h));
        }
    }
    Ok(ExperimentResult {
        experiment: "monotonicity".into(),
        seed,
        samples_per_point: samples,
        exhaustive: false,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> MethodOptions {
        MethodOptions::default()
    }

    #[test]
    fn lift_swaps_with_the_candidate_above() {
        let p = Profile::with_names(
            &["A", "B", "C"],
            vec![Ballot::linear(&[1, 0, 2], 1).unwrap()],
        )
        .unwrap();
        let q = lift_one_position(&p, VoterRef { ballot: 0, copy: 0 }, 0).unwrap();
        assert_eq!(q.ballots()[0].tiers(), [vec![0], vec![1], vec![2]]);
        assert_eq!(
            lower_one_position(&q, VoterRef { ballot: 0, copy: 0 }, 0).unwrap(),
            p
        );
        assert_eq!(
            lift_one_position(&q, VoterRef { ballot: 0, copy: 0 }, 0),
            Err(Error::AlreadyFirst {
                ballot: 0,
                candidate: 0
            })
        );
    }

    #[test]
    fn lift_splits_multiplicity() {
        let p = Profile::with_names(
            &["A", "B", "C"],
            vec![Ballot::linear(&[1, 0, 2], 3).unwrap()],
        )
        .unwrap();
        let q = lift_one_position(&p, VoterRef { ballot: 0, copy: 2 }, 0).unwrap();
        assert_eq!(q.ballots().len(), 2);
        assert_eq!(q.ballots()[0].count(), 1);
        assert_eq!(q.ballots()[1].count(), 2);
        assert_eq!(q.margin(0, 1).unwrap(), -1);
        let r = lower_one_position(&q, VoterRef { ballot: 0, copy: 0 }, 0).unwrap();
        assert_eq!(r.normalized(), p.normalized());
        assert_eq!(
            lift_one_position(&p, VoterRef { ballot: 0, copy: 3 }, 0),
            Err(Error::NoSuchVoter { ballot: 0, copy: 3 })
        );
    }

    #[test]
    fn lift_rejects_weak_orders() {
        let p = Profile::with_names(
            &["A", "B", "C"],
            vec![Ballot::new(vec![vec![1, 2], vec![0]], 1).unwrap()],
        )
        .unwrap();
        assert_eq!(
            lift_one_position(&p, VoterRef { ballot: 0, copy: 0 }, 0),
            Err(Error::NotLinear { ballot: 0 })
        );
    }

    #[test]
    fn one_candidate_never_ties() {
        let r = tie_rate_experiment(&MethodId::ALL, &[1], &[4, 5], 20, 3, &opts()).unwrap();
        assert!(r.rows.iter().all(|row| row.hits == 0 && row.samples == 40));
    }

    #[test]
    fn parity_pairs() {
        assert_eq!(parity_pair(1), vec![1]);
        assert_eq!(parity_pair(10), vec![10, 11]);
        assert_eq!(parity_pair(11), vec![10, 11]);
        let r =
            tie_rate_experiment(&[MethodId::StableVoting], &[3], &[10, 11], 5, 3, &opts()).unwrap();
        assert_eq!(r.rows.len(), 1);
    }

    #[test]
    fn deterministic_across_runs() {
        let m = [MethodId::StableVoting, MethodId::IrvPut, MethodId::BeatPath];
        let a = tie_rate_experiment(&m, &[4], &[10], 200, 9, &opts()).unwrap();
        let b = tie_rate_experiment(&m, &[4], &[10], 200, 9, &opts()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn two_candidates_are_monotone() {
        let r = monotonicity_experiment(&MethodId::ALL, 2, &[3, 4, 7], 100, 5, &opts()).unwrap();
        assert!(r.rows.iter().all(|row| row.hits == 0));
    }

    #[test]
    fn exhaustive_size_limit() {
        assert!(matches!(
            exhaustive_tie_rates(&[MethodId::StableVoting], &[4], &[6], &opts()),
            Err(Error::InvalidGrid(_))
        ));
        let r = exhaustive_tie_rates(&[MethodId::StableVoting], &[3], &[2], &opts()).unwrap();
        assert_eq!(r.rows[0].samples, 36);
    }

    #[test]
    fn csv_layout() {
        let r = exhaustive_tie_rates(&[MethodId::Plurality], &[2], &[2], &opts()).unwrap();
        // Two voters with opposite orders tie; 2 of 4 profiles.
        assert_eq!(
            r.to_csv(),
            "method,candidates,voters,samples,hits,rate\nplurality,2,2,4,2,0.500000\n"
        );
    }

    #[test]
    fn frozen_stable_voting_violation() {
        let (p, ballot, a) = crate::fixtures::sv_monotonicity_violation();
        let w = monotonicity_violation(&p, MethodId::StableVoting, &opts())
            .unwrap()
            .unwrap();
        assert_eq!(w.candidate, a);
        assert_eq!(w.before, CandidateSet::singleton(0));
        assert_eq!(w.after, CandidateSet::singleton(3));
        let lifted = lift_one_position(&p, VoterRef { ballot, copy: 0 }, a).unwrap();
        let after = evaluate(
            MethodId::StableVoting,
            &Election::from_profile(lifted),
            &opts(),
        )
        .unwrap();
        assert_eq!(after, CandidateSet::singleton(3));
    }
}
