//! The three-layer generator matrices `S[i]` and the full flag code they span.
//!
//! With `n = 2 k1 + r`, `k2 = k1 + r` and `M` the companion matrix of a
//! primitive polynomial of degree `k2`, each generator stacks
//!
//! ```text
//!        | A[i]   |   k1 rows, a member of a partial k1-spread
//! S[i] = | B[i]   |   r rows, built from the last rows of M^(i-2)
//!        | A[i+1] |   k1 rows, next spread member (A[1] after the last)
//! ```
//!
//! and flag `i` is the chain of row spaces of its leading rows.

use rayon::prelude::*;

use super::poly::{companion_matrix, cyclic_power, field_power, find_primitive_poly, is_primitive};
use crate::algebra::{FieldElement, FieldSpec, MatrixFq, Subspace};
use crate::error::{Error, Result};

/// Codes larger than this many flags are refused.
pub const MAX_CODE_SIZE: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichParams {
    field: FieldSpec,
    k1: usize,
    r: usize,
    prim_poly: Vec<FieldElement>,
    companion: MatrixFq,
}

impl SandwichParams {
    /// Validates `k1 >= 2` and `0 <= r < k1`. Without an explicit polynomial
    /// the first primitive one of degree `k1 + r` is chosen; a supplied one
    /// (low to high, leading 1 included) must be primitive.
    pub fn new(
        field: FieldSpec,
        k1: usize,
        r: usize,
        prim_poly: Option<Vec<FieldElement>>,
    ) -> Result<Self> {
        if k1 < 2 {
            return Err(Error::InvalidParams(format!(
                "k1 must be at least 2, got {k1}"
            )));
        }
        if r >= k1 {
            return Err(Error::InvalidParams(format!(
                "r must satisfy 0 <= r < k1, got r={r} with k1={k1}"
            )));
        }
        let k2 = k1 + r;
        let size = field_power(field.q(), k2)?;
        if size + 1 > MAX_CODE_SIZE {
            return Err(Error::InvalidParams(format!(
                "code would have {} flags, above the limit of {MAX_CODE_SIZE}",
                size as u128 + 1
            )));
        }
        let prim_poly = match prim_poly {
            Some(poly) => {
                if poly.len() != k2 + 1 {
                    return Err(Error::InvalidParams(format!(
                        "primitive polynomial must have degree k2={k2} ({} coefficients), got {}",
                        k2 + 1,
                        poly.len()
                    )));
                }
                if let Some(bad) = poly.iter().find(|c| c.rep() >= field.q()) {
                    return Err(Error::ElementOutOfRange {
                        value: bad.rep() as u64,
                        q: field.q(),
                    });
                }
                if !is_primitive(&field, &poly)? {
                    return Err(Error::NotPrimitive(field.q()));
                }
                poly
            }
            None => find_primitive_poly(&field, k2)?,
        };
        let companion = companion_matrix(&field, &prim_poly)?;
        Ok(SandwichParams {
            field,
            k1,
            r,
            prim_poly,
            companion,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k2(&self) -> usize {
        self.k1 + self.r
    }

    pub fn n(&self) -> usize {
        2 * self.k1 + self.r
    }

    pub fn prim_poly(&self) -> &[FieldElement] {
        &self.prim_poly
    }

    pub fn companion(&self) -> &MatrixFq {
        &self.companion
    }

    /// Number of generators, `q^k2 + 1`.
    pub fn code_size(&self) -> usize {
        (self.field.q() as usize).pow(self.k2() as u32) + 1
    }

    fn check_index(&self, i: usize) -> Result<()> {
        let max = self.code_size();
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { index: i, max });
        }
        Ok(())
    }

    /// `M^(i-2)` for `i >= 2`, with the zero-matrix convention at `i = 2`.
    fn shifted_power(&self, i: usize) -> Result<MatrixFq> {
        cyclic_power(&self.companion, (i - 2) as u64)
    }

    /// Partial spread layer: `[O | I | O]` for `i = 1`, otherwise
    /// `[I_k1 | first k1 rows of M^(i-2)]`.
    pub fn layer_a(&self, i: usize) -> Result<MatrixFq> {
        self.check_index(i)?;
        let f = &self.field;
        let (k1, r) = (self.k1, self.r);
        if i == 1 {
            return MatrixFq::hstack(&[
                &MatrixFq::zeros(f, k1, k1),
                &MatrixFq::identity(f, k1),
                &MatrixFq::zeros(f, k1, r),
            ]);
        }
        let power = self.shifted_power(i)?;
        MatrixFq::hstack(&[&MatrixFq::identity(f, k1), &power.first_rows(k1)])
    }

    /// Middle layer, absent when `r = 0`.
    ///
    /// `[O | I_r]` for `i = 1`; `[O_{r x k1} | B]` for `i = 2`, where `B` has
    /// first row `e_1` and then `[O | I_{r-1}]`; otherwise
    /// `[O_{r x k1} | last r rows of M^(i-2)]`.
    pub fn layer_b(&self, i: usize) -> Result<Option<MatrixFq>> {
        self.check_index(i)?;
        if self.r == 0 {
            return Ok(None);
        }
        let f = &self.field;
        let (k1, r, k2) = (self.k1, self.r, self.k2());
        let block = match i {
            1 => {
                return MatrixFq::hstack(&[
                    &MatrixFq::zeros(f, r, 2 * k1),
                    &MatrixFq::identity(f, r),
                ])
                .map(Some)
            }
            2 => {
                let mut b = MatrixFq::zeros(f, r, k2);
                b.set(0, 0, FieldElement::ONE);
                for t in 1..r {
                    b.set(t, k1 + t, FieldElement::ONE);
                }
                b
            }
            _ => self.shifted_power(i)?.last_rows(r),
        };
        MatrixFq::hstack(&[&MatrixFq::zeros(f, r, k1), &block]).map(Some)
    }

    /// `S[i] = (A[i]; B[i]; A[i+1])`, wrapping to `A[1]` for the last index.
    /// A rank below `n` is reported as [`Error::RankDeficient`].
    pub fn layer_s(&self, i: usize) -> Result<MatrixFq> {
        self.check_index(i)?;
        let next = if i == self.code_size() { 1 } else { i + 1 };
        let top = self.layer_a(i)?;
        let bottom = self.layer_a(next)?;
        let s = match self.layer_b(i)? {
            Some(mid) => MatrixFq::vstack(&[&top, &mid, &bottom])?,
            None => MatrixFq::vstack(&[&top, &bottom])?,
        };
        let rank = s.rank();
        if rank != self.n() {
            return Err(Error::RankDeficient {
                index: i,
                rank,
                expected: self.n(),
                matrix: s.to_text(),
            });
        }
        Ok(s)
    }
}

/// A full flag `F_1 ⊊ F_2 ⊊ ... ⊊ F_{n-1}` in `F_q^n` with `dim F_i = i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    subspaces: Vec<Subspace>,
}

impl Flag {
    /// Checks dimensions and consecutive containment.
    pub fn new(subspaces: Vec<Subspace>) -> Result<Self> {
        let Some(first) = subspaces.first() else {
            return Err(Error::InvalidFlag("a full flag needs n >= 2".into()));
        };
        let n = first.ambient();
        if subspaces.len() + 1 != n {
            return Err(Error::InvalidFlag(format!(
                "{} subspaces in F^{n}, a full flag has {}",
                subspaces.len(),
                n.saturating_sub(1)
            )));
        }
        for (idx, s) in subspaces.iter().enumerate() {
            if s.ambient() != n || s.field() != first.field() {
                return Err(Error::InvalidFlag(format!(
                    "subspace {} lives in a different space",
                    idx + 1
                )));
            }
            if s.dim() != idx + 1 {
                return Err(Error::InvalidFlag(format!(
                    "subspace {} has dimension {}, expected {}",
                    idx + 1,
                    s.dim(),
                    idx + 1
                )));
            }
        }
        for (idx, pair) in subspaces.windows(2).enumerate() {
            if !pair[1].contains(&pair[0])? {
                return Err(Error::InvalidFlag(format!(
                    "subspace {} is not contained in subspace {}",
                    idx + 1,
                    idx + 2
                )));
            }
        }
        Ok(Flag { subspaces })
    }

    /// Flag whose `j`-th member is the row space of the first `j` rows of
    /// `generator` (which needs `n` columns and at least `n - 1` rows).
    pub fn from_generator(generator: &MatrixFq) -> Result<Self> {
        let n = generator.cols();
        if n < 2 || generator.rows() + 1 < n {
            return Err(Error::InvalidFlag(format!(
                "a {}x{} matrix cannot generate a full flag",
                generator.rows(),
                n
            )));
        }
        let subspaces = (1..n)
            .map(|j| Subspace::rowspace(&generator.first_rows(j)))
            .collect();
        Self::new(subspaces)
    }

    pub fn ambient(&self) -> usize {
        self.subspaces[0].ambient()
    }

    pub fn field(&self) -> &FieldSpec {
        self.subspaces[0].field()
    }

    /// The `i`-dimensional member, `1 <= i <= n - 1`.
    pub fn get(&self, i: usize) -> &Subspace {
        &self.subspaces[i - 1]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }
}

/// The sandwich full flag code: `q^k2 + 1` flags, one per generator `S[i]`.
#[derive(Clone, Debug)]
pub struct FlagCode {
    params: SandwichParams,
    generators: Vec<MatrixFq>,
    flags: Vec<Flag>,
}

/// Builds every generator and its flag. Indices are processed in parallel;
/// the result does not depend on scheduling.
pub fn build_code(params: &SandwichParams) -> Result<FlagCode> {
    let generators = (1..=params.code_size())
        .into_par_iter()
        .map(|i| params.layer_s(i))
        .collect::<Result<Vec<_>>>()?;
    FlagCode::from_generators(params.clone(), generators)
}

impl FlagCode {
    /// Assembles a code from given generators, e.g. ones read from a file.
    /// Each must be a full-rank `n x n` matrix.
    pub fn from_generators(params: SandwichParams, generators: Vec<MatrixFq>) -> Result<Self> {
        let n = params.n();
        for (idx, g) in generators.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "generator {} is {}x{}, expected {n}x{n}",
                    idx + 1,
                    g.rows(),
                    g.cols()
                )));
            }
            if g.field() != params.field() {
                return Err(Error::FieldMismatch);
            }
            let rank = g.rank();
            if rank != n {
                return Err(Error::RankDeficient {
                    index: idx + 1,
                    rank,
                    expected: n,
                    matrix: g.to_text(),
                });
            }
        }
        let flags = generators
            .par_iter()
            .map(Flag::from_generator)
            .collect::<Result<Vec<_>>>()?;
        Ok(FlagCode {
            params,
            generators,
            flags,
        })
    }

    pub fn params(&self) -> &SandwichParams {
        &self.params
    }

    pub fn generators(&self) -> &[MatrixFq] {
        &self.generators
    }

    pub fn flags(&self) -> &[Flag] {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }
}
