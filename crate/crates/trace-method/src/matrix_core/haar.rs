use ndarray::Array2;
use ndarray_linalg::QR;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::stream::RngStream;

/// A square real matrix with orthonormal columns.
#[derive(Debug, Clone)]
pub struct OrthogonalMatrix {
    data: Array2<f64>,
}

impl OrthogonalMatrix {
    /// Validate `U^T U = I` within `tol` (absolute, entrywise).
    pub fn try_new(m: Array2<f64>, tol: f64) -> Result<Self> {
        let (rows, cols) = m.dim();
        if rows != cols {
            return Err(Error::NonSquare { rows, cols });
        }
        if rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        let candidate = Self { data: m };
        let defect = candidate.orthogonality_defect();
        if defect > tol {
            return Err(Error::InvalidConfig(format!(
                "matrix is not orthogonal: max |U^T U - I| = {defect:.3e} exceeds {tol:.3e}"
            )));
        }
        Ok(candidate)
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

    /// Max absolute entry of `U^T U - I`.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.data.t().dot(&self.data);
        let n = self.dim();
        let mut defect = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((gram[(i, j)] - expect).abs());
            }
        }
        defect
    }
}

/// Draw a matrix distributed by Haar measure on the orthogonal group
/// `O(dim)`: QR of an i.i.d. standard-normal matrix with the Q columns
/// flipped to make the R diagonal nonnegative. Deterministic given the
/// stream.
pub fn haar_orthogonal(dim: usize, stream: RngStream) -> OrthogonalMatrix {
    assert!(dim >= 1, "haar_orthogonal requires dim >= 1");
    let mut rng = stream.rng();
    let g = Array2::from_shape_fn((dim, dim), |_| rng.sample::<f64, _>(StandardNormal));
    let (mut q, r) = g.qr().expect("QR of a finite matrix cannot fail");
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).mapv_inplace(|v| -v);
        }
    }
    OrthogonalMatrix { data: q }
}
