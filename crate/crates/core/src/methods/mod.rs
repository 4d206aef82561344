//! Voting methods and a uniform way to run them.
//!
//! Margin-only methods accept either kind of [`Election`]; ballot-dependent
//! methods (the plurality and runoff family) need the ballots.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::margins::MarginGraph;
use crate::profile::Profile;
use crate::stable::{MatchFilter, SvEvaluator, DEFAULT_SMITH_CAP};
use crate::subset::CandidateSet;
use crate::tournament::smith_set_on;
use crate::CandidateId;

mod irv;
mod pairwise;
mod plurality;

pub use irv::{irv_eliminate_all_tied, irv_put, smith_irv};
pub use pairwise::{beat_path, minimax, ranked_pairs, DEFAULT_RP_CAP};
pub use plurality::{first_place_counts, plurality, plurality_runoff};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodId {
    Plurality,
    PluralityRunoff,
    IrvPut,
    IrvEliminateAllTied,
    SmithIrv,
    Minimax,
    BeatPath,
    RankedPairs,
    StableVoting,
    Svs,
    SvWeakCondorcet,
}

impl MethodId {
    pub const ALL: [MethodId; 11] = [
        MethodId::Plurality,
        MethodId::PluralityRunoff,
        MethodId::IrvPut,
        MethodId::IrvEliminateAllTied,
        MethodId::SmithIrv,
        MethodId::Minimax,
        MethodId::BeatPath,
        MethodId::RankedPairs,
        MethodId::StableVoting,
        MethodId::Svs,
        MethodId::SvWeakCondorcet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodId::Plurality => "plurality",
            MethodId::PluralityRunoff => "plurality-runoff",
            MethodId::IrvPut => "irv",
            MethodId::IrvEliminateAllTied => "irv-all-tied",
            MethodId::SmithIrv => "smith-irv",
            MethodId::Minimax => "minimax",
            MethodId::BeatPath => "beat-path",
            MethodId::RankedPairs => "ranked-pairs",
            MethodId::StableVoting => "sv",
            MethodId::Svs => "svs",
            MethodId::SvWeakCondorcet => "sv-weak-condorcet",
        }
    }

    pub fn needs_ballots(self) -> bool {
        matches!(
            self,
            MethodId::Plurality
                | MethodId::PluralityRunoff
                | MethodId::IrvPut
                | MethodId::IrvEliminateAllTied
                | MethodId::SmithIrv
        )
    }

    pub fn is_stable_voting(self) -> bool {
        matches!(
            self,
            MethodId::StableVoting | MethodId::Svs | MethodId::SvWeakCondorcet
        )
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMethod(pub String);

impl fmt::Display for UnknownMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown method {:?}; expected one of ", self.0)?;
        let names: Vec<&str> = MethodId::ALL.iter().map(|m| m.name()).collect();
        f.write_str(&names.join(", "))
    }
}

impl std::error::Error for UnknownMethod {}

impl FromStr for MethodId {
    type Err = UnknownMethod;

    fn from_str(s: &str) -> std::result::Result<Self, UnknownMethod> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let id = match key.as_str() {
            "plurality" => MethodId::Plurality,
            "plurality-runoff" | "runoff" => MethodId::PluralityRunoff,
            "irv" | "irv-put" => MethodId::IrvPut,
            "irv-all-tied" | "irv-eliminate-all-tied" => MethodId::IrvEliminateAllTied,
            "smith-irv" => MethodId::SmithIrv,
            "minimax" => MethodId::Minimax,
            "beat-path" | "beatpath" | "schulze" => MethodId::BeatPath,
            "ranked-pairs" => MethodId::RankedPairs,
            "sv" | "stable-voting" => MethodId::StableVoting,
            "svs" => MethodId::Svs,
            "sv-weak-condorcet" | "sv-wcw" => MethodId::SvWeakCondorcet,
            _ => return Err(UnknownMethod(s.to_string())),
        };
        Ok(id)
    }
}

impl serde::Serialize for MethodId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for MethodId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Computational limits shared by all evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodOptions {
    pub smith_cap: Option<usize>,
    pub rp_cap: u64,
}

impl Default for MethodOptions {
    fn default() -> Self {
        MethodOptions {
            smith_cap: Some(DEFAULT_SMITH_CAP),
            rp_cap: DEFAULT_RP_CAP,
        }
    }
}

/// An election given either as ballots or as bare margins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    profile: Option<Profile>,
    graph: MarginGraph,
}

impl Election {
    pub fn from_profile(profile: Profile) -> Self {
        let graph = profile.margin_graph();
        Election {
            profile: Some(profile),
            graph,
        }
    }

    pub fn from_graph(graph: MarginGraph) -> Self {
        Election {
            profile: None,
            graph,
        }
    }

    pub fn graph(&self) -> &MarginGraph {
        &self.graph
    }

    pub fn profile(&self) -> Option<&Profile> {
        self.profile.as_ref()
    }

    pub fn names(&self) -> &[String] {
        self.graph.names()
    }

    pub fn num_candidates(&self) -> usize {
        self.graph.num_candidates()
    }

    /// Restricts to `keep`, returning the map from new ids to old ids.
    pub fn restrict(&self, keep: CandidateSet) -> Result<(Election, Vec<CandidateId>)> {
        let (graph, ids) = self.graph.restrict(keep)?;
        let profile = match &self.profile {
            Some(p) => Some(p.restrict(keep)?.0),
            None => None,
        };
        Ok((Election { profile, graph }, ids))
    }

    pub fn without(&self, b: CandidateId) -> Result<(Election, Vec<CandidateId>)> {
        let n = self.num_candidates();
        if b >= n {
            return Err(Error::InvalidCandidate { id: b, n });
        }
        if n < 2 {
            return Err(Error::RemoveLastCandidate);
        }
        self.restrict(self.graph.all().without(b))
    }

    fn ballots(&self, method: MethodId) -> Result<&Profile> {
        self.profile
            .as_ref()
            .ok_or(Error::NeedsBallots(method.name()))
    }
}

/// Runs `method` on `election`.
pub fn evaluate(
    method: MethodId,
    election: &Election,
    opts: &MethodOptions,
) -> Result<CandidateSet> {
    let mg = election.graph();
    match method {
        MethodId::Plurality => plurality(election.ballots(method)?),
        MethodId::PluralityRunoff => plurality_runoff(election.ballots(method)?),
        MethodId::IrvPut => irv_put(election.ballots(method)?),
        MethodId::IrvEliminateAllTied => irv_eliminate_all_tied(election.ballots(method)?),
        MethodId::SmithIrv => smith_irv(election.ballots(method)?),
        MethodId::Minimax => Ok(minimax(mg)),
        MethodId::BeatPath => Ok(beat_path(mg)),
        MethodId::RankedPairs => ranked_pairs(mg, opts.rp_cap),
        MethodId::StableVoting => SvEvaluator::new(mg, MatchFilter::SmithFirst)
            .smith_cap(opts.smith_cap)
            .winners(),
        MethodId::Svs => {
            let smith = smith_set_on(mg, mg.all());
            SvEvaluator::new(mg, MatchFilter::SmithFirst)
                .smith_cap(opts.smith_cap)
                .winners_on(smith)
        }
        MethodId::SvWeakCondorcet => SvEvaluator::new(mg, MatchFilter::WeakCondorcet)
            .smith_cap(opts.smith_cap)
            .winners(),
    }
}

/// Maps winner ids of a restricted election back to the original roster.
pub(crate) fn lift_ids(set: CandidateSet, ids: &[CandidateId]) -> CandidateSet {
    set.iter().map(|c| ids[c]).collect()
}
