//! Exact linear algebra over the rationals and prime fields.

mod matrix;
mod poly;
mod scalar;

pub use matrix::{reduce_rows, DimMismatch, Matrix, Rref};
pub use poly::{minimal_polynomial, rational_roots};
pub use scalar::{is_prime, Field, Rat, Scalar};
