//! Small named elections used by the tests, the acceptance suite and the
//! command-line examples.

use crate::margins::MarginGraph;
use crate::profile::{Ballot, Profile};

/// Head-to-head margins of the 2009 Burlington mayoral election.
pub fn burlington() -> MarginGraph {
    // Kiss, Montroll, Simpson, Smith, Wright
    MarginGraph::from_edges(
        &["Kiss", "Montroll", "Simpson", "Smith", "Wright"],
        &[
            (1, 2, 5671),
            (1, 0, 588),
            (0, 2, 4671),
            (0, 4, 253),
            (1, 4, 933),
            (4, 3, 178),
            (0, 3, 368),
            (3, 2, 4849),
            (4, 2, 3961),
            (1, 3, 1573),
        ],
    )
    .expect("valid fixture")
}

/// The Smith set of the 2007 Glasgow Ward 5 (Govan) election:
/// Dornan beats Flanagan by 602, Flanagan beats Hunter by 86 and Hunter
/// beats Dornan by 21.
pub fn glasgow_cycle() -> MarginGraph {
    MarginGraph::from_edges(
        &["Dornan", "Flanagan", "Hunter"],
        &[(0, 1, 602), (1, 2, 86), (2, 0, 21)],
    )
    .expect("valid fixture")
}

/// Four candidates, no Condorcet winner: A>B 6, B>C 4, C>A 8, A>D 12,
/// D>B 2, D>C 10.
pub fn four_candidate_cycles() -> MarginGraph {
    MarginGraph::from_edges(
        &["A", "B", "C", "D"],
        &[
            (0, 1, 6),
            (1, 2, 4),
            (2, 0, 8),
            (0, 3, 12),
            (3, 1, 2),
            (3, 2, 10),
        ],
    )
    .expect("valid fixture")
}

/// [`four_candidate_cycles`] plus a candidate E beaten by A (20), B (16) and
/// C (18) who beats D by 14.
pub fn five_candidate_cycles() -> MarginGraph {
    MarginGraph::from_edges(
        &["A", "B", "C", "D", "E"],
        &[
            (0, 1, 6),
            (1, 2, 4),
            (2, 0, 8),
            (0, 3, 12),
            (3, 1, 2),
            (3, 2, 10),
            (0, 4, 20),
            (1, 4, 16),
            (2, 4, 18),
            (4, 3, 14),
        ],
    )
    .expect("valid fixture")
}

/// A perfectly symmetric A>B>C>A cycle of margin 1, with A beating D by 3
/// and B, C beating D by 1. Not uniquely weighted.
pub fn symmetric_cycle_with_loser() -> MarginGraph {
    MarginGraph::from_edges(
        &["A", "B", "C", "D"],
        &[
            (0, 1, 1),
            (1, 2, 1),
            (2, 0, 1),
            (0, 3, 3),
            (1, 3, 1),
            (2, 3, 1),
        ],
    )
    .expect("valid fixture")
}

pub const GLASGOW_LIKE_NAMES: [&str; 11] = [
    "Dornan",
    "Flanagan",
    "Hunter",
    "Candidate 4",
    "Candidate 5",
    "Candidate 6",
    "Candidate 7",
    "Candidate 8",
    "Candidate 9",
    "Candidate 10",
    "Candidate 11",
];

/// A synthetic 11-candidate truncated-ballot election built to share the
/// published Glasgow Ward 5 outcomes: Smith set {Dornan, Flanagan, Hunter}
/// with margins 602/86/21, Plurality and IRV electing Hunter, and
/// Plurality with Runoff electing Flanagan over Hunter by 86.
pub fn glasgow_like() -> Profile {
    let (d, f, h) = (0, 1, 2);
    let mut ballots = vec![
        Ballot::linear(&[d, f, h], 519),
        Ballot::linear(&[d, h, f], 381),
        Ballot::linear(&[f, d, h], 665),
        Ballot::linear(&[f, h, d], 635),
        Ballot::linear(&[h, d, f], 951),
        Ballot::linear(&[h, f, d], 350),
        Ballot::linear(&[h], 51),
    ];
    for (other, count) in (3..11).zip([57, 55, 53, 51, 49, 47, 45, 44]) {
        ballots.push(Ballot::linear(&[other, d], count));
    }
    let ballots = ballots
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .expect("valid fixture");
    Profile::with_names(&GLASGOW_LIKE_NAMES, ballots).expect("valid fixture")
}

/// Seven voters over six candidates where Stable Voting elects `A` alone,
/// yet moving `A` up one place on the third ballot (`C B E A F D`) makes
/// `D` the sole winner. Returns the profile, the ballot index and `A`.
pub fn sv_monotonicity_violation() -> (Profile, usize, usize) {
    let orders = [
        "ADCEFB", "BDACEF", "CBEAFD", "CDEFBA", "DACEBF", "EBADFC", "FEBADC",
    ];
    let ballots = orders
        .iter()
        .map(|o| {
            let ids: Vec<usize> = o.bytes().map(|c| usize::from(c - b'A')).collect();
            Ballot::linear(&ids, 1).expect("valid fixture")
        })
        .collect();
    let profile =
        Profile::with_names(&["A", "B", "C", "D", "E", "F"], ballots).expect("valid fixture");
    (profile, 2, 0)
}
