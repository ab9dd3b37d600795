//! Exact arithmetic in `F_q` and dense linear algebra over it.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, prime_factors, FieldElement, FieldSpec, MAX_FIELD_ORDER};
pub use matrix::{MatrixFq, Rref};
pub use subspace::{
    enumerate_subspaces, gaussian_binomial, Subspace, SubspaceIter, DEFAULT_ENUMERATION_CAP,
};
