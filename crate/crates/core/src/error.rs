use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {rows}x{cols} (allowed: 1, 2, 4, 8)")]
    UnsupportedDimension { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("invalid noise parameter p = {0} (must lie in [0, 1))")]
    InvalidNoise(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),

    #[error("no feasible point for p = {p}, q = {q}")]
    Infeasible { p: f64, q: f64 },

    #[error("no sign change of I_AB - I_AE found for p = {p}")]
    NoCrossing { p: f64 },

    #[error("ambiguous crossing for p = {p}: {sign_changes} sign changes in pre-scan")]
    AmbiguousCrossing { p: f64, sign_changes: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
