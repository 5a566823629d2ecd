use thiserror::Error;

use crate::estimators::Direction;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix is not symmetric: max |m[i][j] - m[j][i]| = {max_deviation:.3e} exceeds {tolerance:.3e}")]
    Asymmetric { max_deviation: f64, tolerance: f64 },

    #[error("dimension mismatch: {context}")]
    DimensionMismatch { context: String },

    /// Factorization (eigendecomposition, QR) did not converge. Carries the
    /// matrix dimension and magnitude so the failure can be diagnosed.
    #[error("factorization of {dim}x{dim} matrix failed (max |entry| = {max_abs:.3e}): {detail}")]
    Factorization {
        dim: usize,
        max_abs: f64,
        detail: String,
    },

    #[error("insufficient data: need at least 2 samples, got {k}")]
    InsufficientData { k: usize },

    #[error("x and y sample counts differ: {x_samples} vs {y_samples}")]
    SampleCountMismatch { x_samples: usize, y_samples: usize },

    /// Identically zero data, a zero structure estimate, or a rank-zero
    /// covariance: the delta statistic is undefined.
    #[error("degenerate input for direction {direction}: {reason}")]
    DegenerateInput { direction: Direction, reason: String },

    #[error("screening target size {d} out of range: need 1 <= d <= {max_dim} and d < k = {k}")]
    ScreeningSize { d: usize, max_dim: usize, k: usize },

    #[error("estimation of output row {row} failed: {source}")]
    RowEstimation {
        row: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
