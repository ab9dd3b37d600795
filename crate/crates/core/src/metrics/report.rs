use serde::Serialize;

use super::bounds::{cardinality_bound_check, infer_split, BoundCheck};
use super::{
    full_max_distance, max_subspace_distance, min_flag_distance, projected_code,
    projected_min_distance, split_indices,
};
use crate::construction::Flag;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Optimum distance: `d_f = D^(n)`.
    #[serde(rename = "ODFC")]
    Odfc,
    /// Quasi-optimum distance: `d_f = D^(n) - 2`.
    #[serde(rename = "QODFC")]
    Qodfc,
    #[serde(rename = "OTHER")]
    Other,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Classification::Odfc => "ODFC",
            Classification::Qodfc => "QODFC",
            Classification::Other => "OTHER",
        })
    }
}

/// The projected-code test for optimum distance: `C_L` and `C_R` both have
/// maximum distance and as many members as the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OdfcCriterion {
    pub holds: bool,
    pub agrees_with_classification: bool,
}

/// Necessary conditions on the projected codes of a code with deficiency
/// `l < (n-1)/2`. Not applicable otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectedProfileCheck {
    pub applicable: bool,
    /// `d_S(C_i)` is maximal for `i ≤ L - l` and `i ≥ R + l`.
    pub extreme_distances_maximal: bool,
    /// `|C_i| = |C|` for every `i`.
    pub cardinalities_equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub cardinality: usize,
    pub d_f: usize,
    #[serde(rename = "D_n")]
    pub d_n: usize,
    pub l: usize,
    pub classification: Classification,
    pub projected_distances: Vec<usize>,
    pub projected_cardinalities: Vec<usize>,
    /// `sum_i d_S(C_i)`, a lower bound for `d_f`.
    pub projected_distance_sum: usize,
    #[serde(rename = "L")]
    pub l_index: usize,
    #[serde(rename = "R")]
    pub r_index: usize,
    pub odfc_criterion: OdfcCriterion,
    pub projected_profile: ProjectedProfileCheck,
    /// Present when `n` and `d_f` fit `n = 2k + r`, `r ≤ 2`, `d_f = (n^2 - r^2)/2`.
    pub bound_checks: Option<BoundCheck>,
}

/// Exhaustive distance report for a full flag code given as a flag list.
pub fn classify(flags: &[Flag]) -> Result<CodeReport> {
    if flags.len() < 2 {
        return Err(Error::TooFewFlags(flags.len()));
    }
    let n = flags[0].ambient();
    let q = flags[0].field().q() as u64;
    let cardinality = flags.len();
    let d_f = min_flag_distance(flags)?;
    let d_n = full_max_distance(n);
    debug_assert!(d_f % 2 == 0 && d_f <= d_n);
    let l = (d_n - d_f) / 2;
    let classification = match l {
        0 => Classification::Odfc,
        1 => Classification::Qodfc,
        _ => Classification::Other,
    };

    let mut projected_distances = Vec::with_capacity(n - 1);
    let mut projected_cardinalities = Vec::with_capacity(n - 1);
    for i in 1..n {
        let pc = projected_code(flags, i)?;
        projected_distances.push(projected_min_distance(&pc)?);
        projected_cardinalities.push(pc.len());
    }
    let projected_distance_sum = projected_distances.iter().sum();
    let (l_index, r_index) = split_indices(n);

    let maximal = |i: usize| projected_distances[i - 1] == max_subspace_distance(n, i);
    let full_size = |i: usize| projected_cardinalities[i - 1] == cardinality;

    let odfc_holds =
        maximal(l_index) && maximal(r_index) && full_size(l_index) && full_size(r_index);
    let odfc_criterion = OdfcCriterion {
        holds: odfc_holds,
        agrees_with_classification: odfc_holds == (classification == Classification::Odfc),
    };

    let projected_profile = {
        let applicable = 2 * l + 1 < n;
        let low = (1..=l_index.saturating_sub(l)).collect::<Vec<_>>();
        let high = (r_index + l..n).collect::<Vec<_>>();
        ProjectedProfileCheck {
            applicable,
            extreme_distances_maximal: low.iter().chain(&high).all(|&i| maximal(i)),
            cardinalities_equal: (1..n).all(full_size),
        }
    };

    let bound_checks =
        infer_split(n, d_f).map(|(k, r)| cardinality_bound_check(q, k, r, d_f, cardinality));

    Ok(CodeReport {
        cardinality,
        d_f,
        d_n,
        l,
        classification,
        projected_distances,
        projected_cardinalities,
        projected_distance_sum,
        l_index,
        r_index,
        odfc_criterion,
        projected_profile,
        bound_checks,
    })
}

impl CodeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldSpec, MatrixFq};
    use crate::construction::{build_code, SandwichParams};

    #[test]
    fn needs_two_flags() {
        let f = FieldSpec::prime(2).unwrap();
        let flag = Flag::from_generator(&MatrixFq::identity(&f, 3)).unwrap();
        assert_eq!(classify(&[flag]), Err(Error::TooFewFlags(1)));
    }

    #[test]
    fn odfc_for_r1() {
        let f = FieldSpec::prime(2).unwrap();
        let code = build_code(&SandwichParams::new(f, 2, 1, None).unwrap()).unwrap();
        let report = classify(code.flags()).unwrap();
        assert_eq!(report.classification, Classification::Odfc);
        assert_eq!((report.d_f, report.l, report.d_n), (12, 0, 12));
        assert!(report.odfc_criterion.holds && report.odfc_criterion.agrees_with_classification);
        assert!(report.projected_profile.applicable);
        assert!(report.projected_profile.cardinalities_equal);
        let bounds = report.bound_checks.clone().unwrap();
        assert!(bounds.attains_maximum);
        let json = report.to_json();
        for key in [
            "\"cardinality\"",
            "\"d_f\"",
            "\"D_n\"",
            "\"L\"",
            "\"R\"",
            "\"bound_checks\"",
        ] {
            assert!(json.contains(key), "{key} missing from {json}");
        }
        assert!(json.contains("\"ODFC\""));
    }
}
