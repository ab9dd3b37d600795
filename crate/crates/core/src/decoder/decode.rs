use serde::Serialize;

use super::channel::{accumulate, AccumulatedSequence, ReceivedSequence};
use crate::algebra::Subspace;
use crate::construction::FlagCode;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DecodeStatus {
    #[serde(rename = "DECODED")]
    Decoded,
    /// No step found enough surviving dimensions.
    #[serde(rename = "FAILURE")]
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    /// Zero-based codeword index.
    pub flag_index: Option<usize>,
    /// 1, 2 or 3.
    pub step: Option<u8>,
    /// Shot `i` whose subspace triggered the decision.
    pub shot_index: Option<usize>,
}

impl DecodeOutcome {
    fn failure() -> Self {
        DecodeOutcome {
            status: DecodeStatus::Failure,
            flag_index: None,
            step: None,
            shot_index: None,
        }
    }

    pub fn is_decoded(&self) -> bool {
        self.status == DecodeStatus::Decoded
    }
}

/// The unique codeword whose `shot`-th subspace contains `trigger`.
fn lookup(code: &FlagCode, shot: usize, trigger: &Subspace, step: u8) -> Result<DecodeOutcome> {
    let mut found = None;
    let mut candidates = 0;
    for (idx, flag) in code.flags().iter().enumerate() {
        if flag.get(shot).contains(trigger)? {
            candidates += 1;
            found.get_or_insert(idx);
        }
    }
    match (found, candidates) {
        (Some(idx), 1) => Ok(DecodeOutcome {
            status: DecodeStatus::Decoded,
            flag_index: Some(idx),
            step: Some(step),
            shot_index: Some(shot),
        }),
        (None, _) => Err(Error::NoCandidate { step, shot }),
        (_, candidates) => Err(Error::Ambiguous {
            step,
            shot,
            candidates,
        }),
    }
}

/// Smallest `i` in `(k1 + r, n)` with `dim Y_i > 2i - n`.
pub fn step3_index(acc: &AccumulatedSequence, k1: usize, r: usize, n: usize) -> Option<usize> {
    (k1 + r + 1..n).find(|&i| acc.get(i).dim() + n > 2 * i)
}

/// Smallest `i` in `(k1, k1 + r]` with `dim Y_i > i - k1`.
pub fn step2_index(acc: &AccumulatedSequence, k1: usize, r: usize) -> Option<usize> {
    (k1 + 1..=k1 + r).find(|&i| acc.get(i).dim() > i - k1)
}

/// Three-step erasure decoder.
///
/// 1. The first nonzero `X_i` with `i <= k1` lies in exactly one codeword,
///    because those levels are partial spreads.
/// 2. Otherwise, with `Y` the running sums past `k1`, the first
///    `i ∈ (k1, k1 + r]` with `dim Y_i > i - k1` identifies the codeword.
/// 3. Otherwise the first `i ∈ (k1 + r, n)` with `dim Y_i > 2i - n` does.
///
/// Returns a `FAILURE` outcome when no step fires. Zero or several matching
/// codewords at a firing step are reported as errors: on erasure-only input
/// to a sandwich code neither can happen.
pub fn decode(code: &FlagCode, received: &ReceivedSequence) -> Result<DecodeOutcome> {
    let n = code.n();
    if received.ambient() != n {
        return Err(Error::DimensionMismatch(format!(
            "received sequence in F^{} for a code in F^{n}",
            received.ambient()
        )));
    }
    let (k1, r) = (code.params().k1(), code.params().r());
    if let Some(i) = (1..=k1).find(|&i| !received.get(i).is_zero()) {
        return lookup(code, i, received.get(i), 1);
    }
    let acc = accumulate(received, k1);
    if let Some(i) = step2_index(&acc, k1, r) {
        return lookup(code, i, acc.get(i), 2);
    }
    if let Some(i) = step3_index(&acc, k1, r, n) {
        return lookup(code, i, acc.get(i), 3);
    }
    Ok(DecodeOutcome::failure())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldSpec;
    use crate::construction::{build_code, SandwichParams};
    use crate::decoder::erase;

    fn code(k1: usize, r: usize) -> FlagCode {
        build_code(&SandwichParams::new(FieldSpec::prime(2).unwrap(), k1, r, None).unwrap())
            .unwrap()
    }

    #[test]
    fn clean_reception_decodes_at_step_one() {
        let c = code(2, 1);
        for (idx, flag) in c.flags().iter().enumerate() {
            let out = decode(&c, &ReceivedSequence::from_flag(flag)).unwrap();
            assert_eq!(
                out,
                DecodeOutcome {
                    status: DecodeStatus::Decoded,
                    flag_index: Some(idx),
                    step: Some(1),
                    shot_index: Some(1),
                }
            );
        }
    }

    #[test]
    fn step_two_fires() {
        let c = code(3, 2);
        for (idx, flag) in c.flags().iter().enumerate() {
            let rec = erase(flag, &[1, 2, 3, 1, 0, 0, 0], idx as u64).unwrap();
            let out = decode(&c, &rec).unwrap();
            assert_eq!(out.step, Some(2));
            assert_eq!(out.shot_index, Some(4));
            assert_eq!(out.flag_index, Some(idx));
        }
    }

    #[test]
    fn step_three_fires() {
        // k1 = 3, r = 2, n = 8: Y_4, Y_5 thin, Y_6 has dim 5 > 2*6 - 8
        let c = code(3, 2);
        let flag = &c.flags()[7];
        let rec = erase(flag, &[1, 2, 3, 4, 5, 1, 7], 11).unwrap();
        let out = decode(&c, &rec).unwrap();
        assert_eq!(
            (out.step, out.shot_index, out.flag_index),
            (Some(3), Some(6), Some(7))
        );
    }

    #[test]
    fn everything_erased_fails() {
        let c = code(2, 1);
        let rec = erase(&c.flags()[0], &[1, 2, 3, 4], 0).unwrap();
        assert_eq!(decode(&c, &rec).unwrap(), DecodeOutcome::failure());
    }

    #[test]
    fn r_zero_skips_step_two() {
        let c = code(2, 0);
        let flag = &c.flags()[3];
        // X_1, X_2 gone; X_3 whole: dim Y_3 = 3 > 2*3 - 4
        let rec = erase(flag, &[1, 2, 0], 0).unwrap();
        let out = decode(&c, &rec).unwrap();
        assert_eq!(
            (out.step, out.shot_index, out.flag_index),
            (Some(3), Some(3), Some(3))
        );
    }

    #[test]
    fn foreign_subspace_is_reported() {
        let c = code(2, 1);
        // a vector outside every A[i]: e_5 lies in none of the level-1 lines
        let field = c.params().field().clone();
        let mut shots: Vec<Subspace> = (0..4).map(|_| Subspace::zero(&field, 5)).collect();
        shots[0] = Subspace::coordinate(&field, 5, &[4]);
        let rec = ReceivedSequence::new(shots).unwrap();
        assert_eq!(
            decode(&c, &rec),
            Err(Error::NoCandidate { step: 1, shot: 1 })
        );
    }
}
