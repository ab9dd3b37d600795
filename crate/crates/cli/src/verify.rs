//! Invariant suite for a serialized sandwich code.

use std::collections::HashSet;

use flagcode::algebra::{enumerate_subspaces, gaussian_binomial, Subspace};
use flagcode::construction::{CodeFile, Flag, SandwichParams};
use flagcode::metrics::{min_flag_distance, projected_code, projected_min_distance};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn skipped(name: &'static str, detail: impl Into<String>) -> Check {
    Check {
        name,
        status: Status::Skipped,
        detail: detail.into(),
    }
}

/// `d_S(C_i)` of a sandwich code: `2i` up to `k1`, `2k1` through `k2`,
/// then `2(n - i)`.
pub fn expected_profile(k1: usize, r: usize) -> Vec<usize> {
    let n = 2 * k1 + r;
    (1..n)
        .map(|i| {
            if i <= k1 {
                2 * i
            } else if i <= k1 + r {
                2 * k1
            } else {
                2 * (n - i)
            }
        })
        .collect()
}

/// Runs every check it can. Checks that need the flags are skipped when the
/// generators do not define valid flags.
pub fn verify(file: &CodeFile, params: &SandwichParams, max_enumeration: u128) -> VerifyReport {
    let (n, k1, r) = (params.n(), params.k1(), params.r());
    let field = params.field();
    let mut checks = Vec::new();

    let generators = match file.generator_matrices(field) {
        Ok(g) => g,
        Err(e) => {
            checks.push(check("generators_parse", false, e.to_string()));
            return VerifyReport {
                passed: false,
                checks,
            };
        }
    };

    let count_ok = generators.len() == params.code_size();
    checks.push(check(
        "code_size",
        count_ok,
        format!(
            "{} generators, expected q^k2 + 1 = {}",
            generators.len(),
            params.code_size()
        ),
    ));

    let bad_shape: Vec<usize> = generators
        .iter()
        .enumerate()
        .filter(|(_, g)| g.rows() != n || g.cols() != n || g.rank() != n)
        .map(|(i, _)| i + 1)
        .collect();
    checks.push(check(
        "generator_rank",
        bad_shape.is_empty(),
        if bad_shape.is_empty() {
            format!("all generators are invertible {n}x{n}")
        } else {
            format!("S[i] not of rank {n} for i in {bad_shape:?}")
        },
    ));

    let mismatched: Vec<usize> = generators
        .iter()
        .enumerate()
        .filter(|(i, g)| params.layer_s(i + 1).map_or(true, |s| &s != *g))
        .map(|(i, _)| i + 1)
        .collect();
    checks.push(check(
        "generators_match_params",
        mismatched.is_empty() && count_ok,
        if mismatched.is_empty() {
            "every S[i] equals the construction".to_string()
        } else {
            format!("S[i] differs from the construction for i in {mismatched:?}")
        },
    ));

    let flags: Result<Vec<Flag>, String> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| Flag::from_generator(g).map_err(|e| format!("S[{}]: {e}", i + 1)))
        .collect();
    let flags = match flags {
        Ok(f) => {
            checks.push(check(
                "nesting",
                true,
                "every generator defines a full flag",
            ));
            f
        }
        Err(e) => {
            checks.push(check("nesting", false, e));
            for name in [
                "distinct_flags",
                "spread_disjoint",
                "spread_maximal",
                "projected_cardinalities",
                "distance_profile",
                "distance_formula",
                "distance_sum_identity",
            ] {
                checks.push(skipped(name, "flags are invalid"));
            }
            return finish(checks);
        }
    };

    let distinct: HashSet<&Flag> = flags.iter().collect();
    checks.push(check(
        "distinct_flags",
        distinct.len() == flags.len(),
        format!("{} distinct of {}", distinct.len(), flags.len()),
    ));

    let spread: Vec<&Subspace> = flags.iter().map(|f| f.get(k1)).collect();
    let overlapping = spread.iter().enumerate().find_map(|(a, u)| {
        spread[a + 1..]
            .iter()
            .position(|v| u.intersect_dim(v).unwrap_or(1) != 0)
            .map(|b| (a + 1, a + b + 2))
    });
    checks.push(check(
        "spread_disjoint",
        overlapping.is_none(),
        match overlapping {
            None => format!("level-{k1} members meet trivially"),
            Some((a, b)) => format!("level-{k1} members of flags {a} and {b} meet"),
        },
    ));

    checks.push(spread_maximality(&spread, params, max_enumeration));

    let projected: Vec<_> = (1..n)
        .map(|i| projected_code(&flags, i).expect("valid level"))
        .collect();
    let cards: Vec<usize> = projected.iter().map(|c| c.len()).collect();
    checks.push(check(
        "projected_cardinalities",
        cards.iter().all(|&c| c == flags.len()),
        format!("{cards:?}"),
    ));

    let profile: Vec<usize> = projected
        .iter()
        .map(|c| projected_min_distance(c).unwrap_or(0))
        .collect();
    let expected = expected_profile(k1, r);
    checks.push(check(
        "distance_profile",
        profile == expected,
        format!("{profile:?}, expected {expected:?}"),
    ));

    match min_flag_distance(&flags) {
        Ok(d_f) => {
            let formula = (n * n - r * r) / 2;
            checks.push(check(
                "distance_formula",
                d_f == formula,
                format!("d_f = {d_f}, (n^2 - r^2)/2 = {formula}"),
            ));
            let sum: usize = profile.iter().sum();
            checks.push(check(
                "distance_sum_identity",
                d_f == sum,
                format!("d_f = {d_f}, sum of projected distances = {sum}"),
            ));
        }
        Err(e) => {
            checks.push(check("distance_formula", false, e.to_string()));
            checks.push(skipped("distance_sum_identity", "no code distance"));
        }
    }
    finish(checks)
}

fn spread_maximality(spread: &[&Subspace], params: &SandwichParams, cap: u128) -> Check {
    let (q, n, k1) = (params.field().q() as u64, params.n(), params.k1());
    let total = gaussian_binomial(q, n, k1);
    if total.is_none_or(|t| t > cap) {
        return skipped(
            "spread_maximal",
            format!(
                "{} subspaces of dimension {k1} exceed the enumeration cap {cap}",
                total.map_or("too many".to_string(), |t| t.to_string())
            ),
        );
    }
    let members: HashSet<&Subspace> = spread.iter().copied().collect();
    let iter = match enumerate_subspaces(params.field(), n, k1, cap) {
        Ok(iter) => iter,
        Err(e) => return skipped("spread_maximal", e.to_string()),
    };
    let mut scanned = 0u128;
    for s in iter {
        scanned += 1;
        if !members.contains(&s) && spread.iter().all(|m| m.intersect_dim(&s).unwrap_or(1) == 0) {
            return check("spread_maximal", false, format!("{s:?} meets no member"));
        }
    }
    check(
        "spread_maximal",
        true,
        format!("every one of {scanned} subspaces of dimension {k1} meets a member or is one"),
    )
}

fn finish(checks: Vec<Check>) -> VerifyReport {
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    VerifyReport { passed, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_sums_to_distance() {
        assert_eq!(expected_profile(3, 2), vec![2, 4, 6, 6, 6, 4, 2]);
        for k1 in 2..6 {
            for r in 0..k1 {
                let n = 2 * k1 + r;
                assert_eq!(
                    expected_profile(k1, r).iter().sum::<usize>(),
                    (n * n - r * r) / 2
                );
            }
        }
    }
}
