use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::profile::{Ballot, Profile};
use crate::CandidateId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    /// Every voter's linear order drawn independently and uniformly.
    #[default]
    ImpartialCulture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub num_candidates: usize,
    pub num_voters: usize,
    pub seed: u64,
    pub model: Model,
}

impl SamplerSpec {
    pub fn impartial_culture(num_candidates: usize, num_voters: usize, seed: u64) -> Self {
        SamplerSpec {
            num_candidates,
            num_voters,
            seed,
            model: Model::ImpartialCulture,
        }
    }
}

/// `A`, `B`, ... for small rosters, `C1`, `C2`, ... beyond 26.
pub fn candidate_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'A' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("C{i}")).collect()
    }
}

/// Draws profile number `index` of the stream defined by `spec`. Each voter
/// is kept as a separate ballot of count 1 so single voters can be
/// addressed.
pub fn sample_linear_profile(spec: &SamplerSpec, index: u64) -> Profile {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index);
    let n = spec.num_candidates;
    let mut order: Vec<CandidateId> = (0..n).collect();
    let ballots = (0..spec.num_voters)
        .map(|_| {
            match spec.model {
                Model::ImpartialCulture => order.shuffle(&mut rng),
            }
            Ballot::linear(&order, 1).expect("permutation is a valid ballot")
        })
        .collect();
    Profile::from_parts_unchecked(candidate_names(n), ballots)
}

/// Mixes a base seed with grid coordinates into an independent stream seed.
pub(crate) fn cell_seed(seed: u64, candidates: usize, voters: usize) -> u64 {
    fn splitmix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    splitmix(seed ^ splitmix(((candidates as u64) << 32) | voters as u64))
}
