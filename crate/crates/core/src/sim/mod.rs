//! Monte Carlo experiments on impartial-culture profiles and per-election
//! criterion audits.

mod criteria;
mod experiments;
mod sampler;

pub use criteria::{check_criteria, CriteriaReport, IsdaDiff, Verdict};
pub use experiments::{
    exhaustive_tie_rates, lift_one_position, lower_one_position, monotonicity_experiment,
    monotonicity_violation, parity_pair, tie_rate_experiment, ExperimentResult, ExperimentRow,
    MonotonicityWitness, VoterRef, EXHAUSTIVE_LIMIT,
};
pub use sampler::{candidate_names, sample_linear_profile, Model, SamplerSpec};
