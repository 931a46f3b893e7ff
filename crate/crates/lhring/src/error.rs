//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    #[error("matrix is not Hermitian: max entrywise deviation {deviation:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("state is not normalized: |norm^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps: off-diagonal norm {off_norm:.3e}")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("eigendecomposition residual {achieved:.3e} exceeds requested tolerance {requested:.3e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },

    #[error("{what} = {value} outside admissible window [{min}, {max}]")]
    OutOfWindow {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("full representation is limited to two_n <= {max_two_n} (dimension 2^two_n <= {max_dim}), got two_n = {two_n}")]
    DimensionGuard {
        two_n: usize,
        max_two_n: usize,
        max_dim: usize,
    },

    #[error("Fock truncation leak: top-level population {leak:.3e} exceeds {guard:.3e} with n_max = {n_max}")]
    TruncationLeak { leak: f64, guard: f64, n_max: usize },

    #[error("entropy asymmetry: S_A = {s_a:.12} vs S_B = {s_b:.12} differ by more than {tolerance:.3e}")]
    EntropyAsymmetry { s_a: f64, s_b: f64, tolerance: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("verification failed: {failed} of {total} suites did not pass ({names})")]
    VerificationFailed {
        failed: usize,
        total: usize,
        names: String,
    },

    #[error("cannot write output to {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code for the CLI: 1 validation, 2 numerical, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch { .. }
            | Error::NonFinite { .. }
            | Error::NotHermitian { .. }
            | Error::NotNormalized { .. }
            | Error::OutOfWindow { .. }
            | Error::DimensionGuard { .. }
            | Error::InvalidParameter(_) => 1,
            Error::NoConvergence { .. }
            | Error::ToleranceNotMet { .. }
            | Error::TruncationLeak { .. }
            | Error::EntropyAsymmetry { .. }
            | Error::VerificationFailed { .. } => 2,
            Error::Io { .. } => 3,
        }
    }
}
