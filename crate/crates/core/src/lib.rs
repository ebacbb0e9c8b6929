//! Exact computations for singular sheaves on plane cubics with Hilbert
//! polynomial `3m+1` and their replacements by R-bundles on the degenerate
//! surface `D(p)`.
//!
//! The crate is organised bottom-up:
//!
//! - [`foundation`]: scalars over `Q` or `F_p`, dense matrices, sparse polynomials.
//! - [`dspace`]: the bigraded coordinate ring of `D(p)` and its components.
//! - [`moduli`]: presenting matrices, the singular stratum `X8`, tangent data.
//! - [`rbundle`]: the matrix `Phi(A, B)`, support geometry, equivalence, stabilizers.
//! - [`hilbert`]: Euler characteristics and Hilbert functions.
//! - [`verify`]: brute-force finite-field oracles.
//! - [`format`] and [`corpus`]: the JSON document format and the built-in examples.

pub mod corpus;
pub mod dspace;
pub mod format;
pub mod foundation;
pub mod hilbert;
pub mod moduli;
pub mod rbundle;
pub mod verify;

pub use foundation::{Field, Matrix, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("form is not homogeneous of the expected degree: {0}")]
    NotHomogeneous(String),
    #[error("the linear entries z1, z2 are linearly dependent, so p(A) is undefined")]
    DependentForms,
    #[error("matrix is not in X: linear entries must be independent and the determinant nonzero")]
    NotInX,
    #[error("matrix is not in X8: the quadratic entries do not both vanish at p(A), so the sheaf is locally free on its support")]
    NotInX8,
    #[error("matrix is not in special form (z1 = x1, z2 = x2, no x0^2 terms)")]
    NotSpecialForm,
    #[error(
        "direction is tangent to X8: the cokernel of Phi(A, B) is not locally free on its support"
    )]
    TangentDirection,
    #[error("conic is identically zero")]
    DegenerateConic,
    #[error("bidegree ({0}, {1}) outside the supported range")]
    OutOfRange(i64, i64),
    #[error("sampled dimensions {0:?} are not collinear")]
    FitFailure(Vec<usize>),
    #[error("t = {0} puts A + tB inside X8")]
    SampleInX8(String),
    #[error("t = {0} puts A + tB outside X")]
    SampleNotInX(String),
    #[error("invalid Phi matrix: {0}")]
    InvalidPhi(String),
    #[error("witness automorphism failed to carry Phi(A, B1) to Phi(A, B2)")]
    WitnessMismatch,
}
