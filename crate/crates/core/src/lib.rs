//! Ranked-ballot tabulation for Stable Voting and the Condorcet and runoff
//! methods it is usually compared against.
//!
//! The engine works on [`Profile`]s (anonymous multisets of weak-order
//! ballots) and on [`MarginGraph`]s, the head-to-head margin matrices that
//! every margin-based method consumes. Candidate sets are fixed-width bit
//! sets, which caps rosters at [`MAX_CANDIDATES`].

pub mod error;
pub mod fixtures;
pub mod io;
pub mod margins;
pub mod methods;
pub mod profile;
pub mod sim;
pub mod stable;
pub mod subset;
pub mod tournament;

/// Dense index of a candidate within one roster.
pub type CandidateId = usize;

pub use error::{Error, Result};
pub use margins::MarginGraph;
pub use methods::{Election, MethodId};
pub use profile::{Ballot, Candidate, Profile};
pub use stable::{sv_trace, sv_winners, svs_winners, SvTrace};
pub use subset::{CandidateSet, MAX_CANDIDATES};
pub use tournament::{condorcet_loser, condorcet_winner, smith_set, weak_condorcet_winners};
