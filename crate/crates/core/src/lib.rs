//! Full flag codes over `F_q^n` built from partial spreads.
//!
//! The generator of each codeword stacks a partial-spread layer, a layer
//! cut from powers of a primitive companion matrix, and the next
//! partial-spread layer. This crate builds those codes, checks their
//! distance and cardinality by exhaustive search, and decodes them on the
//! erasure channel.
//!
//! ```
//! use flagcode::{algebra::FieldSpec, construction::{build_code, SandwichParams}, metrics};
//!
//! let field = FieldSpec::prime(2).unwrap();
//! let code = build_code(&SandwichParams::new(field, 2, 1, None).unwrap()).unwrap();
//! assert_eq!(code.len(), 9);
//! assert_eq!(metrics::min_flag_distance(code.flags()).unwrap(), 12);
//! ```

pub mod algebra;
pub mod construction;
pub mod decoder;
pub mod error;
pub mod metrics;

pub use algebra::{FieldElement, FieldSpec, MatrixFq, Subspace};
pub use construction::{build_code, Flag, FlagCode, SandwichParams};
pub use error::{Error, Result};
