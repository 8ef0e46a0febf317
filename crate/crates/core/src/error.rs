use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coefficient array has no value at index {index}")]
    MissingCoefficient { index: String },

    #[error("degenerate recurrence: leading coefficient q_r is numerically zero")]
    DegenerateRecurrence,

    #[error("no nonzero kernel vector at the requested order {order}")]
    EmptyKernel { order: usize },

    #[error("points are not independent on the required index set")]
    NotIndependent,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "solver did not converge in {iterations} iterations \
         (primal {primal_residual:.3e}, dual {dual_residual:.3e})"
    )]
    NoConvergence {
        iterations: usize,
        primal_residual: f64,
        dual_residual: f64,
        /// Best iterate reached before hitting the iteration cap.
        partial: Box<crate::relaxation::SolverResult>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
