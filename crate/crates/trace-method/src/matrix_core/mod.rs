//! Dense symmetric linear-algebra primitives: normalized traces, truncated
//! eigendecompositions, pseudoinverses and Haar-distributed random rotations.
//!
//! Everything here is a pure function of its inputs; values are immutable
//! after construction and safe to share across threads. Sampling takes an
//! explicit [`RngStream`](crate::stream::RngStream) so parallel callers own
//! disjoint substreams.

mod eig;
mod haar;

pub use eig::{pseudoinverse, truncated_eig, CutoffPolicy, TruncatedEig};
pub use haar::{haar_orthogonal, OrthogonalMatrix};

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

/// Absolute tolerance for accepting a nearly-symmetric matrix in
/// [`SymmetricMatrix::new`].
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A real symmetric matrix. Construction symmetrizes the entries, so the
/// stored data satisfies `m[(i, j)] == m[(j, i)]` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    data: Array2<f64>,
}

impl SymmetricMatrix {
    /// Build from a square matrix whose asymmetry is at most
    /// [`SYMMETRY_TOL`] entrywise; the result stores `(m + m^T) / 2`.
    pub fn new(m: Array2<f64>) -> Result<Self> {
        Self::with_tolerance(m, SYMMETRY_TOL)
    }

    /// Like [`SymmetricMatrix::new`] with an explicit asymmetry tolerance.
    pub fn with_tolerance(m: Array2<f64>, tol: f64) -> Result<Self> {
        let max_deviation = check_square(&m)?;
        if max_deviation > tol {
            return Err(Error::Asymmetric {
                max_deviation,
                tolerance: tol,
            });
        }
        Ok(Self::symmetrize(m))
    }

    /// Accept any square matrix, symmetrizing unconditionally. Intended for
    /// products such as `V S V^T` whose asymmetry is floating-point noise of
    /// a magnitude that scales with the data.
    pub fn symmetrized(m: Array2<f64>) -> Result<Self> {
        check_square(&m)?;
        Ok(Self::symmetrize(m))
    }

    fn symmetrize(m: Array2<f64>) -> Self {
        let sym = (&m + &m.t()) * 0.5;
        Self { data: sym }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<f64> {
        self.data
    }

    /// Trace divided by the dimension. Cannot fail: the matrix is square by
    /// construction.
    pub fn normalized_trace(&self) -> f64 {
        self.data.diag().sum() / self.dim() as f64
    }

    /// Eigenvalues above the rank cutoff with their eigenvectors.
    pub fn eig(&self, cutoff: CutoffPolicy) -> Result<TruncatedEig> {
        truncated_eig(self, cutoff)
    }

    /// Moore-Penrose pseudoinverse `V S^{-1} V^T` from the truncated
    /// decomposition.
    pub fn pseudoinverse(&self) -> Result<SymmetricMatrix> {
        pseudoinverse(self)
    }
}

/// Returns the max asymmetry if square and nonempty, else the shape error.
fn check_square(m: &Array2<f64>) -> Result<f64> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::NonSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut max_deviation = 0.0_f64;
    for i in 0..rows {
        for j in (i + 1)..rows {
            max_deviation = max_deviation.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    Ok(max_deviation)
}

/// Trace divided by the matrix dimension.
pub fn normalized_trace(m: ArrayView2<'_, f64>) -> Result<f64> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::NonSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::EmptyMatrix);
    }
    Ok(m.diag().sum() / rows as f64)
}
