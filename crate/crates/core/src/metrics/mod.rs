//! Subspace and flag distances, projected codes, classification and
//! cardinality bounds.

mod bounds;
mod report;

pub use bounds::{
    aq_exact, cardinality_bound_check, infer_split, partial_spread_bound, BoundCheck,
};
pub use report::{classify, Classification, CodeReport, OdfcCriterion, ProjectedProfileCheck};

use rayon::prelude::*;

use crate::algebra::Subspace;
use crate::construction::Flag;
use crate::error::{Error, Result};

/// `d_S(U, V) = dim(U + V) - dim(U ∩ V)`.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    let sum = u.sum_dim(v)?;
    Ok(2 * sum - u.dim() - v.dim())
}

/// Sum of the subspace distances level by level.
pub fn flag_distance(a: &Flag, b: &Flag) -> Result<usize> {
    if a.ambient() != b.ambient() || a.subspaces().len() != b.subspaces().len() {
        return Err(Error::DimensionMismatch(format!(
            "flags in F^{} and F^{}",
            a.ambient(),
            b.ambient()
        )));
    }
    a.subspaces()
        .iter()
        .zip(b.subspaces())
        .map(|(u, v)| subspace_distance(u, v))
        .sum()
}

/// Minimum over unordered pairs of distinct positions; 0 for one flag.
pub fn min_flag_distance(flags: &[Flag]) -> Result<usize> {
    if flags.is_empty() {
        return Err(Error::EmptyCode);
    }
    pairwise_min(flags.len(), |i, j| flag_distance(&flags[i], &flags[j]))
}

/// Minimum of `dist(i, j)` over `i < j < len`, or 0 when `len < 2`.
fn pairwise_min(len: usize, dist: impl Fn(usize, usize) -> Result<usize> + Sync) -> Result<usize> {
    if len < 2 {
        return Ok(0);
    }
    let per_row = (0..len - 1)
        .into_par_iter()
        .map(|i| (i + 1..len).try_fold(usize::MAX, |best, j| Ok(best.min(dist(i, j)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_row.into_iter().min().unwrap_or(0))
}

/// `D^(t,n) = 2 (sum_{t_i <= n/2} t_i + sum_{t_i > n/2} (n - t_i))`.
pub fn max_distance(n: usize, type_vector: &[usize]) -> usize {
    2 * type_vector
        .iter()
        .map(|&t| if 2 * t <= n { t } else { n - t })
        .sum::<usize>()
}

/// `D^(n)` for the full type `(1, ..., n-1)`.
pub fn full_max_distance(n: usize) -> usize {
    if n % 2 == 1 {
        (n * n - 1) / 2
    } else {
        n * n / 2
    }
}

/// `(t_L, t_R)` for the full type: the largest `i` with `2i <= n` and the
/// smallest with `2i >= n`.
pub fn split_indices(n: usize) -> (usize, usize) {
    (n / 2, n.div_ceil(2))
}

/// The `i`-dimensional members of a flag list, duplicates removed, first
/// occurrences kept in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedCode {
    pub index: usize,
    pub subspaces: Vec<Subspace>,
}

impl ProjectedCode {
    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
}

pub fn projected_code(flags: &[Flag], i: usize) -> Result<ProjectedCode> {
    let first = flags.first().ok_or(Error::EmptyCode)?;
    let n = first.ambient();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n - 1,
        });
    }
    let mut seen = std::collections::HashSet::new();
    let subspaces = flags
        .iter()
        .map(|f| f.get(i))
        .filter(|s| seen.insert(*s))
        .cloned()
        .collect();
    Ok(ProjectedCode {
        index: i,
        subspaces,
    })
}

/// Minimum pairwise subspace distance; 0 for a single member.
pub fn projected_min_distance(pc: &ProjectedCode) -> Result<usize> {
    pairwise_min(pc.subspaces.len(), |i, j| {
        subspace_distance(&pc.subspaces[i], &pc.subspaces[j])
    })
}

/// Largest possible distance of an `i`-dimensional code in `F^n`.
pub fn max_subspace_distance(n: usize, i: usize) -> usize {
    2 * i.min(n - i)
}
