//! Head-to-head margin graphs.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::profile::{check_roster, Ballot, Profile};
use crate::subset::CandidateSet;
use crate::CandidateId;

/// Antisymmetric matrix of head-to-head margins, `get(a, b)` being the net
/// number of voters preferring `a` to `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginGraph {
    names: Vec<String>,
    m: Vec<i64>,
}

impl MarginGraph {
    /// Builds a graph from a full matrix, checking the diagonal and
    /// antisymmetry.
    pub fn new(names: Vec<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        check_roster(&names)?;
        let n = names.len();
        if matrix.len() != n {
            return Err(Error::MatrixShape {
                rows: matrix.len(),
                n,
            });
        }
        if let Some(row) = matrix.iter().find(|row| row.len() != n) {
            return Err(Error::MatrixShape { rows: row.len(), n });
        }
        for a in 0..n {
            if matrix[a][a] != 0 {
                return Err(Error::NonZeroDiagonal(names[a].clone()));
            }
            for b in a + 1..n {
                if matrix[a][b] != -matrix[b][a] {
                    return Err(Error::Asymmetric {
                        a: names[a].clone(),
                        b: names[b].clone(),
                        ab: matrix[a][b],
                        ba: matrix[b][a],
                    });
                }
            }
        }
        Ok(MarginGraph {
            names,
            m: matrix.into_iter().flatten().collect(),
        })
    }

    /// Builds a graph from a list of `(winner, loser, margin)` edges; pairs
    /// not listed have margin zero.
    pub fn from_edges<S: AsRef<str>>(names: &[S], edges: &[(usize, usize, i64)]) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        check_roster(&names)?;
        let n = names.len();
        let mut m = vec![0i64; n * n];
        for &(a, b, w) in edges {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::InvalidCandidate { id, n });
                }
            }
            if a == b {
                if w != 0 {
                    return Err(Error::NonZeroDiagonal(names[a].clone()));
                }
                continue;
            }
            m[a * n + b] = w;
            m[b * n + a] = -w;
        }
        Ok(MarginGraph { names, m })
    }

    /// Tabulates every head-to-head margin of a profile.
    pub fn from_profile(profile: &Profile) -> MarginGraph {
        let n = profile.num_candidates();
        let mut m = vec![0i64; n * n];
        for ballot in profile.ballots() {
            let pos = ballot.positions(n);
            let w = ballot.count() as i64;
            for a in 0..n {
                for b in a + 1..n {
                    if pos[a] < pos[b] {
                        m[a * n + b] += w;
                        m[b * n + a] -= w;
                    } else if pos[b] < pos[a] {
                        m[b * n + a] += w;
                        m[a * n + b] -= w;
                    }
                }
            }
        }
        MarginGraph {
            names: profile.names().to_vec(),
            m,
        }
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

    pub fn id_of(&self, name: &str) -> Option<CandidateId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn all(&self) -> CandidateSet {
        CandidateSet::full(self.num_candidates())
    }

    /// Margin of `a` vs. `b`. Panics on out-of-range ids.
    #[inline]
    pub fn get(&self, a: CandidateId, b: CandidateId) -> i64 {
        self.m[a * self.names.len() + b]
    }

    /// Checked variant of [`MarginGraph::get`].
    pub fn margin(&self, a: CandidateId, b: CandidateId) -> Result<i64> {
        let n = self.num_candidates();
        for id in [a, b] {
            if id >= n {
                return Err(Error::InvalidCandidate { id, n });
            }
        }
        Ok(self.get(a, b))
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.m
            .chunks(self.num_candidates())
            .map(|row| row.to_vec())
            .collect()
    }

    /// Submatrix on `keep`, densely reindexed. Returns the map from new ids
    /// to old ids alongside.
    pub fn restrict(&self, keep: CandidateSet) -> Result<(MarginGraph, Vec<CandidateId>)> {
        let keep = keep.intersection(self.all());
        if keep.is_empty() {
            return Err(Error::EmptySubset);
        }
        let ids = keep.to_vec();
        let k = ids.len();
        let mut m = Vec::with_capacity(k * k);
        for &a in &ids {
            for &b in &ids {
                m.push(self.get(a, b));
            }
        }
        let names = ids.iter().map(|&c| self.names[c].clone()).collect();
        Ok((MarginGraph { names, m }, ids))
    }

    pub fn remove_candidate(&self, b: CandidateId) -> Result<(MarginGraph, Vec<CandidateId>)> {
        let n = self.num_candidates();
        if b >= n {
            return Err(Error::InvalidCandidate { id: b, n });
        }
        if n < 2 {
            return Err(Error::RemoveLastCandidate);
        }
        self.restrict(self.all().without(b))
    }

    /// No two distinct ordered matches share a margin value. Any zero margin
    /// breaks this, since both directions are then zero.
    pub fn is_uniquely_weighted(&self) -> bool {
        self.is_uniquely_weighted_on(self.all())
    }

    pub fn is_uniquely_weighted_on(&self, set: CandidateSet) -> bool {
        let mut seen = HashSet::new();
        for a in set {
            for b in set {
                if a != b && !seen.insert(self.get(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Builds a linear-ballot profile whose margins equal this graph.
    ///
    /// Odd graphs are seeded with the identity ballot `0 > 1 > ... > n-1`.
    /// Every remaining even residual on a pair `(a, b)` is added with the
    /// ballot pair `a > b > x1 > ... > xk` and `xk > ... > x1 > a > b`, which
    /// moves only the `(a, b)` margin, by 2.
    pub fn realize_profile(&self) -> Result<Profile> {
        let n = self.num_candidates();
        let mut parity = None;
        for a in 0..n {
            for b in a + 1..n {
                let p = self.get(a, b).rem_euclid(2);
                match parity {
                    None => parity = Some(p),
                    Some(q) if q != p => return Err(Error::MixedParity),
                    _ => {}
                }
            }
        }
        let odd = parity == Some(1);
        let mut ballots = Vec::new();
        let identity: Vec<CandidateId> = (0..n).collect();
        if odd {
            ballots.push(Ballot::linear(&identity, 1)?);
        }
        for a in 0..n {
            for b in a + 1..n {
                let seed = if odd { 1 } else { 0 };
                let residual = self.get(a, b) - seed;
                let (hi, lo, k) = if residual >= 0 {
                    (a, b, residual / 2)
                } else {
                    (b, a, -residual / 2)
                };
                if k == 0 {
                    continue;
                }
                let rest: Vec<CandidateId> = (0..n).filter(|&c| c != a && c != b).collect();
                let mut forward = vec![hi, lo];
                forward.extend(&rest);
                let mut backward: Vec<CandidateId> = rest.iter().rev().copied().collect();
                backward.extend([hi, lo]);
                ballots.push(Ballot::linear(&forward, k as u64)?);
                ballots.push(Ballot::linear(&backward, k as u64)?);
            }
        }
        Ok(Profile::from_parts_unchecked(self.names.clone(), ballots))
    }
}

impl Profile {
    pub fn margin_graph(&self) -> MarginGraph {
        MarginGraph::from_profile(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_profile_gives_zero_matrix() {
        let p = Profile::with_names(&["A", "B", "C"], vec![]).unwrap();
        let mg = p.margin_graph();
        assert!(mg.matrix().iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn asymmetry_rejected_with_pair_named() {
        let err = MarginGraph::new(vec!["A".into(), "B".into()], vec![vec![0, 3], vec![2, 0]])
            .unwrap_err();
        assert_eq!(
            err,
            Error::Asymmetric {
                a: "A".into(),
                b: "B".into(),
                ab: 3,
                ba: 2
            }
        );
        assert_eq!(
            MarginGraph::new(vec!["A".into()], vec![vec![1]]),
            Err(Error::NonZeroDiagonal("A".into()))
        );
    }

    #[test]
    fn restrict_full_is_identity() {
        let mg = MarginGraph::from_edges(&["A", "B", "C"], &[(0, 1, 3), (2, 1, 5)]).unwrap();
        let (r, ids) = mg.restrict(mg.all()).unwrap();
        assert_eq!(r, mg);
        assert_eq!(ids, vec![0, 1, 2]);
        assert_eq!(mg.restrict(CandidateSet::EMPTY), Err(Error::EmptySubset));
    }

    #[test]
    fn realize_zero_graph() {
        let mg = MarginGraph::from_edges(&["A", "B", "C"], &[]).unwrap();
        let p = mg.realize_profile().unwrap();
        assert_eq!(p.margin_graph(), mg);
    }

    #[test]
    fn realize_rejects_mixed_parity() {
        let mg = MarginGraph::from_edges(&["A", "B", "C"], &[(0, 1, 1), (1, 2, 2)]).unwrap();
        assert_eq!(mg.realize_profile(), Err(Error::MixedParity));
    }

    #[test]
    fn uniquely_weighted() {
        let mg =
            MarginGraph::from_edges(&["A", "B", "C"], &[(0, 1, 1), (1, 2, 3), (2, 0, 5)]).unwrap();
        assert!(mg.is_uniquely_weighted());
        let tied =
            MarginGraph::from_edges(&["A", "B", "C"], &[(0, 1, 1), (1, 2, 1), (2, 0, 5)]).unwrap();
        assert!(!tied.is_uniquely_weighted());
        let zero = MarginGraph::from_edges(&["A", "B"], &[]).unwrap();
        assert!(!zero.is_uniquely_weighted());
    }
}
