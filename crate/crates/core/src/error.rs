//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not unitary: max |U^dag U - I| = {max_dev:.3e} exceeds {tol:.3e}")]
    NotUnitary { max_dev: f64, tol: f64 },

    #[error("the identity Pauli is not a valid rotation axis")]
    IdentityPauli,

    #[error("Pauli phase {phase} is not Hermitian (must be +1 or -1 times a bare Pauli)")]
    NonHermitianPauli { phase: String },

    #[error("epsilon {eps} is outside the separability regime (must be <= {max})")]
    EpsilonOutOfRange { eps: f64, max: f64 },

    #[error("epsilon {eps} is out of range for error composition (need 0 <= eps < 1)")]
    BudgetEpsilonRange { eps: f64 },

    #[error("no decomposition with m <= {m_max} found; raise --max-m or epsilon")]
    BudgetExceeded { m_max: usize },

    #[error("unsupported qubit count {n} for {what} (supported: {supported})")]
    UnsupportedQubitCount {
        n: usize,
        what: &'static str,
        supported: &'static str,
    },

    #[error("matrix is not a Clifford: {what}")]
    NotClifford { what: String },

    #[error("Clifford reconstruction failed: {what}")]
    ReconstructionFailed { what: String },

    #[error("assembled circuit violates the distance contract: achieved {achieved:.3e} > epsilon {epsilon:.3e}")]
    DistanceContract { achieved: f64, epsilon: f64 },

    #[error("parse error in {path}:{line}: {what}")]
    Parse {
        path: String,
        line: usize,
        what: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
