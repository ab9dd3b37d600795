//! Erasure channel model, the three-step decoder and a Monte-Carlo harness.

mod channel;
mod decode;
mod simulate;

pub use channel::{
    accumulate, correctable_budget, erase, erase_with_rng, error_count, random_subspace,
    AccumulatedSequence, ReceivedFile, ReceivedSequence,
};
pub use decode::{decode, step2_index, step3_index, DecodeOutcome, DecodeStatus};
pub use simulate::{
    random_erasures, simulate, trial_rng, BudgetMode, SimulationReport, StepHistogram,
};
