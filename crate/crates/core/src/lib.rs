//! Structured low-rank completion of Hankel and quasi-Hankel matrices.
//!
//! The library has two sides. The exact side completes partially specified
//! Hankel matrices (via characteristic vectors and linear recurrences) and
//! quasi-Hankel matrices (via exponential arrays and flat extensions) to
//! minimal rank. The convex side minimizes the nuclear norm over the same
//! affine structure and certifies, through subdifferential conditions,
//! whether the two solutions coincide. An experiment harness sweeps
//! parameter grids and writes CSV/PGM outputs.

pub mod error;
pub mod experiments;
pub mod hankel;
pub mod indexsets;
pub mod quasihankel;
pub mod relaxation;
pub mod structure;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
