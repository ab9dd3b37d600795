use serde::Serialize;

/// Largest size of a partial `k`-spread in `F_q^n`: `floor((q^n - 1)/(q^k - 1))`.
pub fn partial_spread_bound(q: u64, n: usize, k: usize) -> u128 {
    assert!(k >= 1 && k < n, "need 1 <= k < n");
    let q = q as u128;
    (q.pow(n as u32) - 1) / (q.pow(k as u32) - 1)
}

/// Exact `A_q(n, 2k; k) = (q^n - q^(k+r)) / (q^k - 1) + 1` with `r = n mod k`,
/// valid when `k > (q^r - 1)/(q - 1)`; `None` otherwise.
pub fn aq_exact(q: u64, n: usize, k: usize) -> Option<u128> {
    assert!(k >= 1 && k < n, "need 1 <= k < n");
    let r = n % k;
    let qq = q as u128;
    let threshold = (qq.pow(r as u32) - 1) / (qq - 1);
    if (k as u128) <= threshold {
        return None;
    }
    Some((qq.pow(n as u32) - qq.pow((k + r) as u32)) / (qq.pow(k as u32) - 1) + 1)
}

/// Reads `n = 2k + r` with `r ∈ {0, 1, 2}`, `k >= 2`, `r < k` off a full
/// flag code's length and distance, when `d_f = (n^2 - r^2)/2` for one of
/// them.
pub fn infer_split(n: usize, d_f: usize) -> Option<(usize, usize)> {
    (0..=2usize)
        .filter(|&r| r <= n && (n - r).is_multiple_of(2))
        .map(|r| ((n - r) / 2, r))
        .find(|&(k, r)| k >= 2 && r < k && 2 * d_f == n * n - r * r)
}

/// Cardinality against the partial spread bounds for a full flag code with
/// `n = 2k + r` and distance `(n^2 - r^2)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    /// `r ∈ {0,1,2}` and the distance matches, so `|C| <= A_q(n, 2k; k)` is a theorem.
    pub applicable: bool,
    pub k: usize,
    pub r: usize,
    pub cardinality: u128,
    pub lemma21: u128,
    pub lemma22: Option<u128>,
    /// The exact value when known, otherwise the partial spread bound.
    pub bound: u128,
    pub within_bound: bool,
    /// `|C| = q^(k+r) + 1 = A_q(n, 2k; k)`.
    pub attains_maximum: bool,
    /// `bound - |C|`.
    pub gap: u128,
}

pub fn cardinality_bound_check(
    q: u64,
    k: usize,
    r: usize,
    d_f: usize,
    cardinality: usize,
) -> BoundCheck {
    let n = 2 * k + r;
    let applicable = r <= 2 && k >= 2 && r < k && 2 * d_f == n * n - r * r;
    let lemma21 = partial_spread_bound(q, n, k);
    let lemma22 = aq_exact(q, n, k);
    let bound = lemma22.unwrap_or(lemma21);
    let cardinality = cardinality as u128;
    let maximum = (q as u128).pow((k + r) as u32) + 1;
    BoundCheck {
        applicable,
        k,
        r,
        cardinality,
        lemma21,
        lemma22,
        bound,
        within_bound: cardinality <= bound,
        attains_maximum: lemma22 == Some(cardinality) && cardinality == maximum,
        gap: bound.saturating_sub(cardinality),
    }
}
