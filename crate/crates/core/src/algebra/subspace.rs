use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::{FieldElement, FieldSpec};
use super::matrix::MatrixFq;
use crate::error::{Error, Result};

/// A subspace of `F_q^n`, stored by its reduced row echelon basis.
///
/// RREF is canonical, so two values are equal exactly when their basis
/// matrices agree entry for entry. The zero subspace has a `0 x n` basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: MatrixFq,
    pivots: Vec<usize>,
}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.cols().hash(state);
        self.basis.rows().hash(state);
        self.basis.entries().hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in F_{}^{}) ",
            self.dim(),
            self.field().q(),
            self.ambient()
        )?;
        let rows: Vec<String> = (0..self.dim())
            .map(|r| {
                let row: Vec<String> = self.basis.row(r).iter().map(|e| e.to_string()).collect();
                row.join("")
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

impl Subspace {
    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: MatrixFq::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    /// The whole space `F_q^n`.
    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        Subspace {
            basis: MatrixFq::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of an arbitrary matrix.
    pub fn rowspace(a: &MatrixFq) -> Self {
        let r = a.rref();
        Subspace {
            basis: r.matrix.first_rows(r.rank),
            pivots: r.pivots,
        }
    }

    /// Span of the standard basis vectors with the given zero-based indices.
    pub fn coordinate(field: &FieldSpec, ambient: usize, coords: &[usize]) -> Self {
        let mut m = MatrixFq::zeros(field, coords.len(), ambient);
        for (r, &c) in coords.iter().enumerate() {
            m.set(r, c, FieldElement::ONE);
        }
        Self::rowspace(&m)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    pub fn basis(&self) -> &MatrixFq {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient(),
                other.ambient()
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Self::rowspace(&MatrixFq::vstack(&[
            &self.basis,
            &other.basis,
        ])?))
    }

    /// `dim(U + V)`, the rank of the stacked bases.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        if self.is_zero() {
            return Ok(other.dim());
        }
        if other.is_zero() {
            return Ok(self.dim());
        }
        Ok(MatrixFq::vstack(&[&self.basis, &other.basis])?.rank())
    }

    /// `dim(U ∩ V) = dim U + dim V - dim(U + V)`.
    pub fn intersect_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(self.sum_dim(other)? == self.dim())
    }

    /// Image of `coeffs` (an `a x dim` matrix) applied to this basis, i.e. the
    /// row space of `coeffs * basis`.
    pub fn image_of(&self, coeffs: &MatrixFq) -> Result<Subspace> {
        Ok(Self::rowspace(&coeffs.mul(&self.basis)?))
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n` by the product formula,
/// or `None` on overflow.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow((n - i) as u32)? - 1)?;
        den = den.checked_mul(q.checked_pow((i + 1) as u32)? - 1)?;
    }
    Some(num / den)
}

/// Default cap for brute-force subspace enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Every `k`-dimensional subspace of `F_q^n` exactly once, in canonical form.
///
/// Walks pivot-column patterns in lexicographic order and, for each, every
/// assignment of the free RREF entries.
pub fn enumerate_subspaces(
    field: &FieldSpec,
    n: usize,
    k: usize,
    cap: u128,
) -> Result<SubspaceIter> {
    let count = gaussian_binomial(field.q() as u64, n, k).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    Ok(SubspaceIter::new(field, n, k))
}

pub struct SubspaceIter {
    field: FieldSpec,
    n: usize,
    k: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    digits: Vec<u32>,
    done: bool,
}

impl SubspaceIter {
    fn new(field: &FieldSpec, n: usize, k: usize) -> Self {
        let mut it = SubspaceIter {
            field: field.clone(),
            n,
            k,
            pivots: (0..k).collect(),
            free: Vec::new(),
            digits: Vec::new(),
            done: k > n,
        };
        if !it.done {
            it.reset_free();
        }
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate() {
            for c in p + 1..self.n {
                if !self.pivots.contains(&c) {
                    self.free.push((r, c));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) -> bool {
        let (n, k) = (self.n, self.k);
        let Some(i) = (0..k).rev().find(|&i| self.pivots[i] < n - k + i) else {
            return false;
        };
        self.pivots[i] += 1;
        for j in i + 1..k {
            self.pivots[j] = self.pivots[j - 1] + 1;
        }
        true
    }

    fn advance(&mut self) {
        let q = self.field.q();
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < q {
                return;
            }
            *d = 0;
        }
        if self.next_pivots() {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let mut basis = MatrixFq::zeros(&self.field, self.k, self.n);
        for (r, &p) in self.pivots.iter().enumerate() {
            basis.set(r, p, FieldElement::ONE);
        }
        for (&(r, c), &d) in self.free.iter().zip(&self.digits) {
            basis.set(r, c, FieldElement::from_rep_unchecked(d));
        }
        let out = Subspace {
            basis,
            pivots: self.pivots.clone(),
        };
        self.advance();
        Some(out)
    }
}
