use std::collections::HashMap;

use proptest::prelude::*;
use stable_tally::io::{
    parse_preflib, parse_profile_json, write_preflib, write_profile_json, PreflibKind,
};
use stable_tally::methods::{
    beat_path, evaluate, irv_eliminate_all_tied, irv_put, minimax, plurality, ranked_pairs,
    smith_irv, Election, MethodId, MethodOptions, DEFAULT_RP_CAP,
};
use stable_tally::sim::{lift_one_position, lower_one_position, VoterRef};
use stable_tally::stable::{
    sv_weak_condorcet_variant, sv_winners_naive, svs_winners, MatchFilter, SvEvaluator,
};
use stable_tally::tournament::{smith_set_on, weak_condorcet_winners};
use stable_tally::{
    condorcet_loser, condorcet_winner, sv_winners, Ballot, CandidateSet, MarginGraph, Profile,
};

fn names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'A' + i as u8) as char).to_string())
        .collect()
}

fn linear_ballot(n: usize) -> impl Strategy<Value = Ballot> {
    (Just((0..n).collect::<Vec<_>>()).prop_shuffle(), 1u64..4)
        .prop_map(|(order, count)| Ballot::linear(&order, count).unwrap())
}

/// A weak order over a prefix of a random permutation; the rest is left
/// unranked.
fn weak_ballot(n: usize) -> impl Strategy<Value = Ballot> {
    (
        Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
        1..=n,
        1u64..4,
    )
        .prop_map(|(order, cuts, ranked, count)| {
            let mut tiers: Vec<Vec<usize>> = vec![vec![]];
            for (i, &c) in order[..ranked].iter().enumerate() {
                if i > 0 && cuts[i] {
                    tiers.push(vec![]);
                }
                tiers.last_mut().unwrap().push(c);
            }
            Ballot::new(tiers, count).unwrap()
        })
}

fn linear_profile(max_n: usize, max_ballots: usize) -> impl Strategy<Value = Profile> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(linear_ballot(n), 1..=max_ballots)
            .prop_map(move |b| Profile::new(names(n), b).unwrap())
    })
}

fn weak_profile(max_n: usize, max_ballots: usize) -> impl Strategy<Value = Profile> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(weak_ballot(n), 0..=max_ballots)
            .prop_map(move |b| Profile::new(names(n), b).unwrap())
    })
}

fn graph_from_upper(n: usize, upper: &[i64]) -> MarginGraph {
    let mut m = vec![vec![0i64; n]; n];
    let mut k = 0;
    for a in 0..n {
        for b in a + 1..n {
            m[a][b] = upper[k];
            m[b][a] = -upper[k];
            k += 1;
        }
    }
    MarginGraph::new(names(n), m).unwrap()
}

fn margin_graph(max_n: usize, max_abs: i64) -> impl Strategy<Value = MarginGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-max_abs..=max_abs, n * (n - 1) / 2)
            .prop_map(move |upper| graph_from_upper(n, &upper))
    })
}

fn same_parity_graph(max_n: usize) -> impl Strategy<Value = MarginGraph> {
    (1..=max_n, 0i64..2).prop_flat_map(|(n, parity)| {
        prop::collection::vec(-4i64..=4, n * (n - 1) / 2).prop_map(move |half| {
            let upper: Vec<i64> = half.iter().map(|h| 2 * h + parity).collect();
            graph_from_upper(n, &upper)
        })
    })
}

/// Smallest nonempty set whose members all strictly beat every outsider.
fn smith_brute_force(mg: &MarginGraph) -> CandidateSet {
    let n = mg.num_candidates();
    (1u64..1 << n)
        .map(CandidateSet::from_bits)
        .filter(|s| {
            s.iter()
                .all(|x| (0..n).filter(|y| !s.contains(*y)).all(|y| mg.get(x, y) > 0))
        })
        .min_by_key(|s| s.len())
        .unwrap()
}

/// Ballot-level IRV with parallel-universe tie handling on linear ballots.
/// Also reports whether any round had a tie for last place.
fn irv_oracle(profile: &Profile) -> (CandidateSet, bool) {
    fn go(
        profile: &Profile,
        live: CandidateSet,
        memo: &mut HashMap<CandidateSet, (CandidateSet, bool)>,
    ) -> (CandidateSet, bool) {
        if live.len() == 1 {
            return (live, false);
        }
        if let Some(&r) = memo.get(&live) {
            return r;
        }
        let mut tally: HashMap<usize, u64> = live.iter().map(|c| (c, 0)).collect();
        for b in profile.ballots() {
            if let Some(top) = b.tiers().iter().map(|t| t[0]).find(|c| live.contains(*c)) {
                *tally.get_mut(&top).unwrap() += b.count();
            }
        }
        let low = *tally.values().min().unwrap();
        let losers: Vec<usize> = live.iter().filter(|c| tally[c] == low).collect();
        let mut winners = CandidateSet::EMPTY;
        let mut tied = losers.len() > 1;
        for l in losers {
            let (w, t) = go(profile, live.without(l), memo);
            winners = winners.union(w);
            tied |= t;
        }
        memo.insert(live, (winners, tied));
        (winners, tied)
    }
    go(
        profile,
        CandidateSet::full(profile.num_candidates()),
        &mut HashMap::new(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn margins_are_antisymmetric(p in weak_profile(6, 12)) {
        let mg = p.margin_graph();
        let n = mg.num_candidates();
        for a in 0..n {
            prop_assert_eq!(mg.get(a, a), 0);
            for b in 0..n {
                prop_assert_eq!(mg.get(a, b), -mg.get(b, a));
                prop_assert_eq!(mg.get(a, b), p.margin(a, b).unwrap());
            }
        }
    }

    #[test]
    fn removal_keeps_margins(p in weak_profile(6, 12), pick in any::<prop::sample::Index>()) {
        let n = p.num_candidates();
        prop_assume!(n >= 2);
        let b = pick.index(n);
        let (q, ids) = p.remove_candidate(b).unwrap();
        let (mq, _) = p.margin_graph().remove_candidate(b).unwrap();
        prop_assert_eq!(&q.margin_graph(), &mq);
        for x in 0..n - 1 {
            for y in 0..n - 1 {
                prop_assert_eq!(q.margin(x, y).unwrap(), p.margin(ids[x], ids[y]).unwrap());
            }
        }
    }

    #[test]
    fn truncated_ballots_rank_the_rest_last(
        ballots in (2usize..=6).prop_flat_map(|n| prop::collection::vec(weak_ballot(n), 1..8))
    ) {
        let n = ballots.iter().flat_map(|b| b.tiers().iter().flatten()).max().unwrap() + 1;
        let explicit: Vec<Ballot> = ballots
            .iter()
            .map(|b| {
                let mut tiers = b.tiers().to_vec();
                let rest: Vec<usize> = (0..n).filter(|c| !tiers.iter().flatten().any(|x| x == c)).collect();
                if !rest.is_empty() {
                    tiers.push(rest);
                }
                Ballot::new(tiers, b.count()).unwrap()
            })
            .collect();
        let truncated = Profile::new(names(n), ballots.clone()).unwrap();
        let completed = Profile::new(names(n), explicit).unwrap();
        prop_assert_eq!(truncated.margin_graph(), completed.margin_graph());
        // Direct count: a candidate outranks every unranked one.
        for a in 0..n {
            for b in 0..n {
                let mut m = 0i64;
                for ballot in &ballots {
                    let rank = |c: usize| ballot.tiers().iter().position(|t| t.contains(&c)).unwrap_or(usize::MAX);
                    let (ra, rb) = (rank(a), rank(b));
                    m += (ra < rb) as i64 * ballot.count() as i64 - (rb < ra) as i64 * ballot.count() as i64;
                }
                prop_assert_eq!(truncated.margin(a, b).unwrap(), m);
            }
        }
    }

    #[test]
    fn realize_round_trip(mg in same_parity_graph(6)) {
        let p = mg.realize_profile().unwrap();
        prop_assert_eq!(p.margin_graph(), mg.clone());
        prop_assert_eq!(sv_winners(&p.margin_graph()).unwrap(), sv_winners(&mg).unwrap());
    }

    #[test]
    fn restrict_composes(mg in margin_graph(6, 5), k1 in any::<u64>(), k2 in any::<u64>()) {
        let n = mg.num_candidates();
        let outer = CandidateSet::from_bits(k1).intersection(mg.all());
        prop_assume!(!outer.is_empty());
        let (g1, ids1) = mg.restrict(outer).unwrap();
        let inner = CandidateSet::from_bits(k2).intersection(g1.all());
        prop_assume!(!inner.is_empty());
        let (g2, ids2) = g1.restrict(inner).unwrap();
        let direct: CandidateSet = inner.iter().map(|c| ids1[c]).collect();
        let (g3, ids3) = mg.restrict(direct).unwrap();
        prop_assert_eq!(g2, g3);
        let composed: Vec<usize> = ids2.iter().map(|&c| ids1[c]).collect();
        prop_assert_eq!(composed, ids3);
        prop_assert!(n >= direct.len());
    }

    #[test]
    fn smith_matches_brute_force(mg in margin_graph(6, 3)) {
        let smith = smith_set_on(&mg, mg.all());
        prop_assert_eq!(smith, smith_brute_force(&mg));
        if let Some(cw) = condorcet_winner(&mg) {
            prop_assert_eq!(smith, CandidateSet::singleton(cw));
            prop_assert_eq!(weak_condorcet_winners(&mg), CandidateSet::singleton(cw));
        }
    }

    #[test]
    fn smith_removal_lemma(mg in margin_graph(6, 3), pick in any::<prop::sample::Index>()) {
        let n = mg.num_candidates();
        prop_assume!(n >= 2);
        let b = pick.index(n);
        prop_assume!(condorcet_winner(&mg) != Some(b));
        let sub = mg.all().without(b);
        let full = smith_set_on(&mg, mg.all());
        for a in smith_set_on(&mg, sub) {
            prop_assert!(full.contains(a), "{a} in Smith without {b} but not in Smith");
        }
    }

    #[test]
    fn stable_voting_theorems(mg in margin_graph(6, 4)) {
        let w = sv_winners(&mg).unwrap();
        prop_assert!(!w.is_empty());
        prop_assert_eq!(w, sv_winners_naive(&mg));
        prop_assert!(w.is_subset(smith_set_on(&mg, mg.all())));
        if mg.is_uniquely_weighted() {
            prop_assert_eq!(w.len(), 1);
            prop_assert_eq!(w, svs_winners(&mg).unwrap());
        }
        if let Some(cw) = condorcet_winner(&mg) {
            prop_assert_eq!(w, CandidateSet::singleton(cw));
        }
        if let Some(cl) = condorcet_loser(&mg) {
            prop_assert!(!w.contains(cl));
        }
        prop_assert!(!sv_weak_condorcet_variant(&mg).unwrap().is_empty());
    }

    #[test]
    fn memo_is_sound(mg in margin_graph(6, 4), keep in any::<u64>()) {
        let set = CandidateSet::from_bits(keep).intersection(mg.all());
        prop_assume!(!set.is_empty());
        let mut with = SvEvaluator::new(&mg, MatchFilter::SmithFirst);
        let full = with.winners().unwrap();
        let on_set = with.winners_on(set).unwrap();
        let mut without = SvEvaluator::new(&mg, MatchFilter::SmithFirst).without_memo();
        prop_assert_eq!(full, without.winners().unwrap());
        prop_assert_eq!(on_set, without.winners_on(set).unwrap());
        let (sub, ids) = mg.restrict(set).unwrap();
        let lifted: CandidateSet = sv_winners(&sub).unwrap().iter().map(|c| ids[c]).collect();
        prop_assert_eq!(on_set, lifted);
    }

    #[test]
    fn json_round_trip(p in weak_profile(6, 10)) {
        prop_assert_eq!(parse_profile_json(&write_profile_json(&p)).unwrap(), p);
    }

    #[test]
    fn preflib_round_trip(p in weak_profile(6, 10)) {
        let text = write_preflib(&p, "round trip");
        let kind = if p.ballots().iter().all(|b| b.is_linear()) { PreflibKind::Soc } else { PreflibKind::Toc };
        let q = parse_preflib(&text, kind).unwrap();
        prop_assert_eq!(q.margin_graph(), p.margin_graph());
        prop_assert_eq!(q.normalized(), p.normalized());
    }

    #[test]
    fn plurality_counts_first_places(p in linear_profile(6, 10)) {
        let n = p.num_candidates();
        let mut tally = vec![0u64; n];
        for b in p.ballots() {
            tally[b.tiers()[0][0]] += b.count();
        }
        let best = *tally.iter().max().unwrap();
        let expected: CandidateSet = (0..n).filter(|&c| tally[c] == best).collect();
        prop_assert_eq!(plurality(&p).unwrap(), expected);
    }

    #[test]
    fn irv_matches_oracle(p in linear_profile(6, 10)) {
        let (expected, tied) = irv_oracle(&p);
        prop_assert_eq!(irv_put(&p).unwrap(), expected);
        if !tied {
            prop_assert_eq!(irv_eliminate_all_tied(&p).unwrap(), expected);
        }
    }

    #[test]
    fn reference_methods_are_condorcet_consistent(p in linear_profile(6, 11)) {
        let mg = p.margin_graph();
        let smith = smith_set_on(&mg, mg.all());
        let sirv = smith_irv(&p).unwrap();
        prop_assert!(sirv.is_subset(smith));
        let opts = MethodOptions::default();
        let e = Election::from_profile(p.clone());
        for m in MethodId::ALL {
            match evaluate(m, &e, &opts) {
                Ok(w) => prop_assert!(!w.is_empty(), "{m}"),
                Err(stable_tally::Error::RankedPairsIndeterminate { .. }) => {}
                Err(err) => prop_assert!(false, "{m}: {err}"),
            }
        }
        if let Some(cw) = condorcet_winner(&mg) {
            let single = CandidateSet::singleton(cw);
            prop_assert_eq!(minimax(&mg), single);
            prop_assert_eq!(beat_path(&mg), single);
            prop_assert_eq!(sirv, single);
            if let Ok(rp) = ranked_pairs(&mg, DEFAULT_RP_CAP) {
                prop_assert_eq!(rp, single);
            }
        }
    }

    #[test]
    fn lift_moves_one_margin_by_two(
        p in linear_profile(6, 8),
        pick_ballot in any::<prop::sample::Index>(),
        pick_candidate in any::<prop::sample::Index>(),
    ) {
        prop_assume!(!p.ballots().is_empty() && p.num_candidates() >= 2);
        let bi = pick_ballot.index(p.ballots().len());
        let order: Vec<usize> = p.ballots()[bi].tiers().iter().map(|t| t[0]).collect();
        let pos = 1 + pick_candidate.index(order.len() - 1);
        let (a, above) = (order[pos], order[pos - 1]);
        let voter = VoterRef { ballot: bi, copy: 0 };
        let q = lift_one_position(&p, voter, a).unwrap();
        let (before, after) = (p.margin_graph(), q.margin_graph());
        for x in 0..p.num_candidates() {
            for y in 0..p.num_candidates() {
                let d = after.get(x, y) - before.get(x, y);
                if (x, y) == (a, above) {
                    prop_assert_eq!(d, 2);
                } else if (x, y) == (above, a) {
                    prop_assert_eq!(d, -2);
                } else {
                    prop_assert_eq!(d, 0);
                }
            }
        }
        prop_assert_eq!(lower_one_position(&q, voter, a).unwrap().normalized(), p.normalized());
    }
}
