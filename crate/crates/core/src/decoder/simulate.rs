//! Seeded Monte-Carlo runs of erase-then-decode.
//!
//! Trial `t` draws from a ChaCha8 stream selected by `(seed, t)`, so results
//! do not depend on how trials are scheduled across threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::channel::{accumulate, correctable_budget, erase_with_rng};
use super::decode::{decode, step2_index, step3_index};
use crate::construction::FlagCode;
use crate::error::{Error, Result};
use crate::metrics::min_flag_distance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetMode {
    /// `floor((d_f - 1)/2)` erasures per trial.
    Correctable,
    /// A fixed number of erasures per trial, capped by the total dimension.
    Total(usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StepHistogram {
    pub step1: usize,
    pub step2: usize,
    pub step3: usize,
    pub failure: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimulationReport {
    pub trials: usize,
    pub successes: usize,
    pub failures: usize,
    pub step_histogram: StepHistogram,
    pub seed: u64,
    pub error_budget: usize,
    /// Decoded, but to a different codeword.
    pub wrong_decodes: usize,
    /// Ambiguous or empty candidate sets.
    pub decode_errors: usize,
    /// Trials where steps 1 and 2 could not fire.
    pub step3_premise: usize,
    /// ... and among those, trials where a step-3 index existed.
    pub step3_index_found: usize,
}

impl SimulationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// RNG for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Spreads `budget` erasures one at a time over shots that still have room
/// (shot `i` holds at most `i`).
pub fn random_erasures<R: Rng + ?Sized>(n: usize, budget: usize, rng: &mut R) -> Vec<usize> {
    let mut e = vec![0usize; n - 1];
    for _ in 0..budget {
        let open: Vec<usize> = (0..n - 1).filter(|&i| e[i] < i + 1).collect();
        if open.is_empty() {
            break;
        }
        e[open[rng.gen_range(0..open.len())]] += 1;
    }
    e
}

struct Trial {
    step: Option<u8>,
    success: bool,
    wrong: bool,
    error: bool,
    step3_premise: bool,
    step3_found: bool,
}

fn run_trial(code: &FlagCode, budget: usize, seed: u64, t: u64) -> Result<Trial> {
    let mut rng = trial_rng(seed, t);
    let sent = rng.gen_range(0..code.len());
    let erasures = random_erasures(code.n(), budget, &mut rng);
    let received = erase_with_rng(&code.flags()[sent], &erasures, &mut rng)?;

    let (k1, r, n) = (code.params().k1(), code.params().r(), code.n());
    let acc = accumulate(&received, k1);
    let step3_premise =
        (1..=k1).all(|i| received.get(i).is_zero()) && step2_index(&acc, k1, r).is_none();
    let step3_found = step3_premise && step3_index(&acc, k1, r, n).is_some();

    let trial = match decode(code, &received) {
        Ok(out) => Trial {
            step: out.step,
            success: out.flag_index == Some(sent),
            wrong: out.is_decoded() && out.flag_index != Some(sent),
            error: false,
            step3_premise,
            step3_found,
        },
        Err(Error::Ambiguous { .. }) | Err(Error::NoCandidate { .. }) => Trial {
            step: None,
            success: false,
            wrong: false,
            error: true,
            step3_premise,
            step3_found,
        },
        Err(e) => return Err(e),
    };
    Ok(trial)
}

/// Runs `trials` independent erase/decode rounds on uniformly chosen
/// codewords.
pub fn simulate(
    code: &FlagCode,
    trials: usize,
    seed: u64,
    mode: BudgetMode,
) -> Result<SimulationReport> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let budget = match mode {
        BudgetMode::Correctable => correctable_budget(min_flag_distance(code.flags())?),
        BudgetMode::Total(b) => b,
    };
    let results = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(code, budget, seed, t))
        .collect::<Result<Vec<_>>>()?;

    let mut report = SimulationReport {
        trials,
        successes: 0,
        failures: 0,
        step_histogram: StepHistogram::default(),
        seed,
        error_budget: budget,
        wrong_decodes: 0,
        decode_errors: 0,
        step3_premise: 0,
        step3_index_found: 0,
    };
    for t in results {
        if t.success {
            report.successes += 1;
        } else {
            report.failures += 1;
        }
        match t.step {
            Some(1) => report.step_histogram.step1 += 1,
            Some(2) => report.step_histogram.step2 += 1,
            Some(3) => report.step_histogram.step3 += 1,
            _ => report.step_histogram.failure += 1,
        }
        report.wrong_decodes += t.wrong as usize;
        report.decode_errors += t.error as usize;
        report.step3_premise += t.step3_premise as usize;
        report.step3_index_found += t.step3_found as usize;
    }
    Ok(report)
}
