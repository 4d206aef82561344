use crate::error::{Error, Result};
use crate::margins::MarginGraph;
use crate::subset::CandidateSet;
use crate::CandidateId;

/// Default limit on tie-break orders ranked pairs will enumerate.
pub const DEFAULT_RP_CAP: u64 = 10_000;

/// Candidates whose worst head-to-head loss is smallest.
pub fn minimax(mg: &MarginGraph) -> CandidateSet {
    let n = mg.num_candidates();
    let worst = |a: CandidateId| (0..n).filter(|&x| x != a).map(|x| mg.get(x, a)).max();
    let scores: Vec<Option<i64>> = (0..n).map(worst).collect();
    let best = scores.iter().min().copied().flatten();
    (0..n).filter(|&a| scores[a] == best).collect()
}

/// Strongest-path strengths: the best over all paths of the weakest positive
/// margin along the path.
pub fn strongest_paths(mg: &MarginGraph) -> Vec<Vec<i64>> {
    let n = mg.num_candidates();
    let mut p = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && mg.get(i, j) > 0 {
                p[i][j] = mg.get(i, j);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let via = p[i][k].min(p[k][j]);
                if via > p[i][j] {
                    p[i][j] = via;
                }
            }
        }
    }
    p
}

/// Beat Path (Schulze) on margins.
pub fn beat_path(mg: &MarginGraph) -> CandidateSet {
    let n = mg.num_candidates();
    let p = strongest_paths(mg);
    (0..n)
        .filter(|&a| (0..n).all(|b| p[a][b] >= p[b][a]))
        .collect()
}

/// Ranked Pairs on margins.
///
/// Positive-margin pairs are locked from the largest margin down, skipping
/// any pair that would close a cycle; the winners are the sources of the
/// locked graph. Pairs with equal margins are tried in every order and the
/// winners of all orders are returned together. Fails when the number of
/// orders exceeds `cap`.
pub fn ranked_pairs(mg: &MarginGraph, cap: u64) -> Result<CandidateSet> {
    let n = mg.num_candidates();
    let mut pairs: Vec<(CandidateId, CandidateId)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if mg.get(a, b) > 0 {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_by(|&(a, b), &(c, d)| mg.get(c, d).cmp(&mg.get(a, b)).then((a, b).cmp(&(c, d))));
    let mut groups: Vec<Vec<(CandidateId, CandidateId)>> = Vec::new();
    for pair in pairs {
        match groups.last_mut() {
            Some(g) if mg.get(g[0].0, g[0].1) == mg.get(pair.0, pair.1) => g.push(pair),
            _ => groups.push(vec![pair]),
        }
    }
    let mut orders: u128 = 1;
    for g in &groups {
        for k in 2..=g.len() as u128 {
            orders = orders.saturating_mul(k);
        }
    }
    if orders > cap as u128 {
        return Err(Error::RankedPairsIndeterminate { orders, cap });
    }
    let mut winners = CandidateSet::EMPTY;
    let mut locked = vec![0u64; n];
    lock_groups(&groups, 0, &mut locked, &mut winners);
    Ok(winners)
}

fn lock_groups(
    groups: &[Vec<(CandidateId, CandidateId)>],
    gi: usize,
    locked: &mut [u64],
    winners: &mut CandidateSet,
) {
    let Some(group) = groups.get(gi) else {
        *winners = winners.union(sources(locked));
        return;
    };
    let mut order: Vec<usize> = (0..group.len()).collect();
    permute(&mut order, 0, &mut |perm| {
        let mut next = locked.to_vec();
        for &i in perm {
            let (a, b) = group[i];
            if !reaches(&next, b, a) {
                next[a] |= 1u64 << b;
            }
        }
        lock_groups(groups, gi + 1, &mut next, winners);
    });
}

fn permute(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k + 1 >= items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Whether `to` is reachable from `from` along locked edges.
fn reaches(adj: &[u64], from: CandidateId, to: CandidateId) -> bool {
    let mut seen = 1u64 << from;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        for c in CandidateSet::from_bits(frontier) {
            next |= adj[c];
        }
        if next & (1u64 << to) != 0 {
            return true;
        }
        frontier = next & !seen;
        seen |= next;
    }
    from == to
}

fn sources(adj: &[u64]) -> CandidateSet {
    let beaten = adj.iter().fold(0u64, |acc, &row| acc | row);
    CandidateSet::full(adj.len()).difference(CandidateSet::from_bits(beaten))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn four_and_five_candidates() {
        let mg = fixtures::four_candidate_cycles();
        assert_eq!(beat_path(&mg).to_vec(), vec![0]);
        assert_eq!(ranked_pairs(&mg, DEFAULT_RP_CAP).unwrap().to_vec(), vec![0]);
        let mg = fixtures::five_candidate_cycles();
        assert_eq!(beat_path(&mg).to_vec(), vec![1]);
        assert_eq!(ranked_pairs(&mg, DEFAULT_RP_CAP).unwrap().to_vec(), vec![2]);
    }

    #[test]
    fn glasgow_minimax() {
        let mg = fixtures::glasgow_cycle();
        assert_eq!(minimax(&mg).to_vec(), vec![0]);
    }

    #[test]
    fn minimax_column_scan() {
        let mg = fixtures::four_candidate_cycles();
        // Worst losses: A 8 (to C), B 6, C 10, D 12.
        assert_eq!(minimax(&mg).to_vec(), vec![1]);
    }

    #[test]
    fn condorcet_winner_wins() {
        let mg = fixtures::burlington();
        let m = mg.id_of("Montroll").unwrap();
        assert_eq!(minimax(&mg).to_vec(), vec![m]);
        assert_eq!(beat_path(&mg).to_vec(), vec![m]);
        assert_eq!(ranked_pairs(&mg, DEFAULT_RP_CAP).unwrap().to_vec(), vec![m]);
    }

    #[test]
    fn ranked_pairs_symmetric_cycle_ties() {
        let mg =
            MarginGraph::from_edges(&["A", "B", "C"], &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert_eq!(
            ranked_pairs(&mg, DEFAULT_RP_CAP).unwrap().to_vec(),
            vec![0, 1, 2]
        );
        assert_eq!(beat_path(&mg).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn ranked_pairs_cap() {
        // Eight candidates, all 28 margins equal: 28! orders.
        let names: Vec<String> = (0..8).map(|i| format!("C{i}")).collect();
        let mut edges = Vec::new();
        for a in 0..8 {
            for b in a + 1..8 {
                edges.push(if (a + b) % 2 == 0 {
                    (a, b, 2)
                } else {
                    (b, a, 2)
                });
            }
        }
        let mg = MarginGraph::from_edges(&names, &edges).unwrap();
        assert!(matches!(
            ranked_pairs(&mg, DEFAULT_RP_CAP),
            Err(Error::RankedPairsIndeterminate { cap: 10_000, .. })
        ));
    }

    #[test]
    fn zero_margins_leave_multiple_sources() {
        let mg = MarginGraph::from_edges(&["A", "B", "C"], &[(0, 2, 2), (1, 2, 4)]).unwrap();
        assert_eq!(
            ranked_pairs(&mg, DEFAULT_RP_CAP).unwrap().to_vec(),
            vec![0, 1]
        );
        assert_eq!(beat_path(&mg).to_vec(), vec![0, 1]);
    }
}
