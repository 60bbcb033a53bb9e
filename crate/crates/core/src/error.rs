use thiserror::Error;

/// Errors raised by state construction, measure evaluation and pair search.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |m - m^dagger| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error(
        "Jacobi sweeps did not converge after {sweeps} sweeps: off-diagonal norm {off_norm:e}"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("trace is {trace}, expected 1 (residual {residual:e})")]
    BadTrace { trace: f64, residual: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state is not incoherent: max off-diagonal magnitude {residual:e}")]
    NotIncoherent { residual: f64 },

    #[error("not normalized: squared norm {norm_sq} (residual {residual:e})")]
    Normalization { norm_sq: f64, residual: f64 },

    #[error("degenerate lift: |alpha| = {alpha_abs} must lie strictly between 0 and 1")]
    DegenerateLift { alpha_abs: f64 },

    #[error("expected dimension {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that come from numerical domains rather than malformed input text.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::Parse(_))
    }
}
