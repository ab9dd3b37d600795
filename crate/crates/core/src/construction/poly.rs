//! Companion matrices, multiplicative orders and primitive polynomial search.

use crate::algebra::{prime_factors, FieldElement, FieldSpec, MatrixFq};
use crate::error::{Error, Result};

/// Steps tried by the linear fallback in [`matrix_order`].
const ORDER_SEARCH_LIMIT: u64 = 1 << 22;

/// `q^k` as `u64`, or an error when it does not fit.
pub(crate) fn field_power(q: u32, k: usize) -> Result<u64> {
    (q as u64)
        .checked_pow(k as u32)
        .ok_or_else(|| Error::InvalidParams(format!("{q}^{k} overflows")))
}

/// Companion matrix of a monic polynomial given low to high, leading 1
/// included: ones on the superdiagonal and `(-p_0, ..., -p_{k-1})` in the
/// last row.
pub fn companion_matrix(field: &FieldSpec, poly: &[FieldElement]) -> Result<MatrixFq> {
    if poly.len() < 2 {
        return Err(Error::InvalidParams(
            "companion matrix needs degree >= 1".into(),
        ));
    }
    let k = poly.len() - 1;
    if poly[k] != FieldElement::ONE {
        return Err(Error::NotMonic);
    }
    let mut m = MatrixFq::zeros(field, k, k);
    for i in 0..k - 1 {
        m.set(i, i + 1, FieldElement::ONE);
    }
    for (j, &c) in poly[..k].iter().enumerate() {
        m.set(k - 1, j, field.neg(c));
    }
    Ok(m)
}

/// Smallest `e >= 1` with `M^e = I`.
///
/// When `M^(q^k - 1) = I` the order is found by stripping prime factors of
/// `q^k - 1`; otherwise powers are walked one by one up to a fixed limit.
pub fn matrix_order(m: &MatrixFq) -> Result<u64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "order of a non-square matrix".into(),
        ));
    }
    let k = m.rows();
    if m.rank() < k {
        return Err(Error::Singular);
    }
    let id = MatrixFq::identity(m.field(), k);
    let group = field_power(m.field().q(), k)? - 1;
    if m.pow(group)? == id {
        let mut e = group;
        for l in prime_factors(group) {
            while e % l == 0 && m.pow(e / l)? == id {
                e /= l;
            }
        }
        return Ok(e);
    }
    let mut acc = m.clone();
    for e in 1..=ORDER_SEARCH_LIMIT {
        if acc == id {
            return Ok(e);
        }
        acc = acc.mul(m)?;
    }
    Err(Error::OrderNotFound(ORDER_SEARCH_LIMIT))
}

/// Whether the companion matrix of `poly` generates a cyclic group of order
/// `q^k - 1`.
pub fn is_primitive(field: &FieldSpec, poly: &[FieldElement]) -> Result<bool> {
    let m = companion_matrix(field, poly)?;
    if poly[0].is_zero() {
        return Ok(false);
    }
    let k = m.rows();
    let id = MatrixFq::identity(field, k);
    let group = field_power(field.q(), k)? - 1;
    if m.pow(group)? != id {
        return Ok(false);
    }
    for l in prime_factors(group) {
        if m.pow(group / l)? == id {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The first primitive monic polynomial of degree `k`, candidates taken in
/// increasing order of `sum_i rep(p_i) q^i` (so `x^3 + x + 1` precedes
/// `x^3 + x^2 + 1` over `F_2`). Returned low to high with the leading 1.
pub fn find_primitive_poly(field: &FieldSpec, k: usize) -> Result<Vec<FieldElement>> {
    if k == 0 {
        return Err(Error::InvalidParams(
            "primitive polynomial degree must be >= 1".into(),
        ));
    }
    let q = field.q() as u64;
    let count = field_power(field.q(), k)?;
    for code in 0..count {
        let mut poly = Vec::with_capacity(k + 1);
        let mut x = code;
        for _ in 0..k {
            poly.push(FieldElement::from_rep_unchecked((x % q) as u32));
            x /= q;
        }
        poly.push(FieldElement::ONE);
        if poly[0].is_zero() {
            continue;
        }
        if is_primitive(field, &poly)? {
            return Ok(poly);
        }
    }
    Err(Error::NoPrimitive(k))
}

/// Matrix power with the construction's boundary conventions: exponent 0
/// gives the zero matrix and exponent `q^k - 1` gives the identity. Exponents
/// above `q^k - 1` are rejected.
pub fn cyclic_power(m: &MatrixFq, e: u64) -> Result<MatrixFq> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "power of a non-square matrix".into(),
        ));
    }
    let k = m.rows();
    let max = field_power(m.field().q(), k)? - 1;
    if e > max {
        return Err(Error::ExponentOutOfRange { exp: e, max });
    }
    match e {
        0 => Ok(MatrixFq::zeros(m.field(), k, k)),
        e if e == max => Ok(MatrixFq::identity(m.field(), k)),
        e => m.pow(e),
    }
}
