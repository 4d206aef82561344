use thiserror::Error;

use crate::CandidateId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("candidate id {id} is out of range for a roster of {n}")]
    InvalidCandidate { id: CandidateId, n: usize },

    #[error("duplicate candidate name {0:?}")]
    DuplicateName(String),

    #[error("candidate {id} appears in more than one tier of a ballot")]
    RepeatedCandidate { id: CandidateId },

    #[error("ballot has an empty tier")]
    EmptyTier,

    #[error("ballot ranks no candidates")]
    EmptyRanking,

    #[error("ballot count must be positive")]
    ZeroCount,

    #[error("an election needs at least one candidate")]
    NoCandidates,

    #[error("at most {max} candidates are supported, got {n}")]
    TooManyCandidates { n: usize, max: usize },

    #[error("cannot remove the last remaining candidate")]
    RemoveLastCandidate,

    #[error("candidate subset is empty")]
    EmptySubset,

    #[error("margins must all share one parity")]
    MixedParity,

    #[error("margin matrix is not antisymmetric at ({a}, {b}): {ab} vs {ba}")]
    Asymmetric {
        a: String,
        b: String,
        ab: i64,
        ba: i64,
    },

    #[error("margin of {0} against itself must be zero")]
    NonZeroDiagonal(String),

    #[error("margin matrix has {rows} rows for {n} candidates")]
    MatrixShape { rows: usize, n: usize },

    #[error("a ballot has a tied top tier; this method needs a single first choice")]
    TiedTopTier,

    #[error("ballot {ballot} is not a linear order")]
    NotLinear { ballot: usize },

    #[error("candidate {candidate} is already first on ballot {ballot}")]
    AlreadyFirst {
        ballot: usize,
        candidate: CandidateId,
    },

    #[error("candidate {candidate} is already last on ballot {ballot}")]
    AlreadyLast {
        ballot: usize,
        candidate: CandidateId,
    },

    #[error("no voter at ballot {ballot}, copy {copy}")]
    NoSuchVoter { ballot: usize, copy: u64 },

    #[error("all ballots are exhausted")]
    AllBallotsExhausted,

    #[error("Smith set of {size} candidates exceeds the cap of {cap}")]
    SmithCapExceeded { size: usize, cap: usize },

    #[error("ranked pairs needs {orders} tie-break orders, more than the cap of {cap}; the winner set is indeterminate under this cap")]
    RankedPairsIndeterminate { orders: u128, cap: u64 },

    #[error("method {0} needs ballots, but only a margin graph was given")]
    NeedsBallots(&'static str),

    #[error("this check needs exactly {expected} candidates, got {got}")]
    WrongCandidateCount { expected: usize, got: usize },

    #[error("invalid experiment grid: {0}")]
    InvalidGrid(String),

    #[error("{0}")]
    Parse(#[from] crate::io::ParseError),
}
