//! Exact scalar arithmetic and dense linear algebra.

mod matrix;
mod poly;
mod scalar;

pub use matrix::Matrix;
pub use poly::{Exponents, Poly};
pub use scalar::{Field, Scalar, MAX_PRIME};
