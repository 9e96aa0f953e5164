use thiserror::Error;

/// Errors surfaced by the numerical kernels and the estimation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operand shapes do not conform for the requested operation.
    #[error("{op}: shapes do not conform: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    ShapeMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    /// An iterative scheme failed to converge within its sweep cap.
    #[error("{op}: no convergence after {sweeps} sweeps")]
    NonConvergence { op: &'static str, sweeps: usize },

    /// A caller-supplied argument violates the operation's contract.
    #[error("{op}: {reason}")]
    InvalidArgument { op: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(op: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn shape(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Self {
        Error::ShapeMismatch {
            op,
            left_rows: left.0,
            left_cols: left.1,
            right_rows: right.0,
            right_cols: right.1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
