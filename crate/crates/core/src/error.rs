use thiserror::Error;

/// Error taxonomy shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A result would exceed the supported matrix dimension.
    #[error("capacity exceeded: dimension {dim} is larger than the supported maximum {max}")]
    Capacity { dim: usize, max: usize },

    /// A qubit or matrix index is out of range.
    #[error("index error: {0}")]
    Index(String),

    /// An argument violates an operation's contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A scalar argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A state would not be positive semidefinite.
    #[error("positivity violated: {0}")]
    Positivity(String),

    /// A reduced single-qubit state is not diagonal, so no temperature exists.
    #[error(
        "local Gibbs criterion violated: off-diagonal magnitude {offdiag:.3e} exceeds {tol:.1e}"
    )]
    Lgc { offdiag: f64, tol: f64 },

    /// Operand dimensions are incompatible.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    /// A two-qubit gate uses a pair absent from the coupling map.
    #[error("layout violation: {0}")]
    Layout(String),

    /// An optimizer failed to reach its declared tolerance.
    #[error("calibration failure: {0}")]
    Calibration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
