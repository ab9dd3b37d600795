//! Primitive polynomials, companion matrices and the sandwich flag code.

mod io;
mod poly;
mod sandwich;

pub use io::{CodeFile, FlagListFile, ParamsFile};
pub use poly::{companion_matrix, cyclic_power, find_primitive_poly, is_primitive, matrix_order};
pub use sandwich::{build_code, Flag, FlagCode, SandwichParams, MAX_CODE_SIZE};
