//! Fixed-width candidate sets.
//!
//! Candidate ids are dense indices below [`MAX_CANDIDATES`], so a set of them
//! fits in one `u64`. The raw bits double as the memoization key for the
//! recursive evaluators.

use std::fmt;

use crate::CandidateId;

/// Largest roster the engine accepts.
pub const MAX_CANDIDATES: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateSet(u64);

impl CandidateSet {
    pub const EMPTY: CandidateSet = CandidateSet(0);

    pub fn from_bits(bits: u64) -> Self {
        CandidateSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CANDIDATES);
        if n == MAX_CANDIDATES {
            CandidateSet(u64::MAX)
        } else {
            CandidateSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(id: CandidateId) -> Self {
        CandidateSet(1u64 << id)
    }

    pub fn contains(self, id: CandidateId) -> bool {
        id < MAX_CANDIDATES && self.0 & (1u64 << id) != 0
    }

    pub fn insert(&mut self, id: CandidateId) {
        self.0 |= 1u64 << id;
    }

    pub fn remove(&mut self, id: CandidateId) {
        self.0 &= !(1u64 << id);
    }

    pub fn with(self, id: CandidateId) -> Self {
        CandidateSet(self.0 | (1u64 << id))
    }

    pub fn without(self, id: CandidateId) -> Self {
        CandidateSet(self.0 & !(1u64 << id))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        CandidateSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        CandidateSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        CandidateSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<CandidateId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<CandidateId> {
        self.iter().collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = CandidateId;

    fn next(&mut self) -> Option<CandidateId> {
        if self.0 == 0 {
            return None;
        }
        let id = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(id)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for CandidateSet {
    type Item = CandidateId;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<CandidateId> for CandidateSet {
    fn from_iter<I: IntoIterator<Item = CandidateId>>(iter: I) -> Self {
        let mut set = CandidateSet::EMPTY;
        for id in iter {
            set.insert(id);
        }
        set
    }
}

impl fmt::Debug for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = CandidateSet::full(4);
        assert_eq!(s.len(), 4);
        s.remove(2);
        assert_eq!(s.to_vec(), vec![0, 1, 3]);
        assert!(!s.contains(2));
        assert!(s.contains(3));
        assert_eq!(s.first(), Some(0));
        assert!(CandidateSet::singleton(1).is_subset(s));
        assert_eq!(CandidateSet::full(64).len(), 64);
        assert_eq!(CandidateSet::EMPTY.first(), None);
        let t: CandidateSet = [5, 1].into_iter().collect();
        assert_eq!(t.union(s).to_vec(), vec![0, 1, 3, 5]);
        assert_eq!(t.intersection(s).to_vec(), vec![1]);
        assert_eq!(s.difference(t).to_vec(), vec![0, 3]);
    }
}
