//! Sample statistics: centered covariance and cross-covariance estimation
//! and the pseudoinverse-based structure-matrix estimator.

use std::fmt;

use ndarray::{Array2, Axis};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix_core::{truncated_eig, CutoffPolicy, SymmetricMatrix, TruncatedEig};

/// Which causal direction an estimate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// X explains Y.
    Forward,
    /// Y explains X.
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Forward => write!(f, "X->Y"),
            Direction::Backward => write!(f, "Y->X"),
        }
    }
}

/// k joint observations of two vector-valued variables, one sample per
/// column: `x` is `n x k`, `y` is `m x k`.
#[derive(Debug, Clone)]
pub struct PairedDataset {
    x: Array2<f64>,
    y: Array2<f64>,
}

impl PairedDataset {
    /// Build from matrices holding one sample per column.
    pub fn from_columns(x: Array2<f64>, y: Array2<f64>) -> Result<Self> {
        let k = x.ncols();
        if k != y.ncols() {
            return Err(Error::SampleCountMismatch {
                x_samples: k,
                y_samples: y.ncols(),
            });
        }
        if k < 2 {
            return Err(Error::InsufficientData { k });
        }
        if x.nrows() == 0 || y.nrows() == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self { x, y })
    }

    /// Build from matrices holding one sample per row (the CSV layout).
    pub fn from_rows(x_rows: Array2<f64>, y_rows: Array2<f64>) -> Result<Self> {
        Self::from_columns(x_rows.reversed_axes(), y_rows.reversed_axes())
    }

    pub fn sample_count(&self) -> usize {
        self.x.ncols()
    }

    pub fn x_dim(&self) -> usize {
        self.x.nrows()
    }

    pub fn y_dim(&self) -> usize {
        self.y.nrows()
    }

    /// `n x k` view, one sample per column.
    pub fn x(&self) -> &Array2<f64> {
        &self.x
    }

    /// `m x k` view, one sample per column.
    pub fn y(&self) -> &Array2<f64> {
        &self.y
    }
}

/// Centered covariance and cross-covariance estimates, with the truncated
/// eigendecomposition (and hence the numerical rank) of each block.
#[derive(Debug, Clone)]
pub struct CovarianceSet {
    sigma_x: SymmetricMatrix,
    sigma_y: SymmetricMatrix,
    /// `m x n` cross block; the `n x m` counterpart is its transpose.
    sigma_yx: Array2<f64>,
    eig_x: TruncatedEig,
    eig_y: TruncatedEig,
}

impl CovarianceSet {
    pub fn sigma_x(&self) -> &SymmetricMatrix {
        &self.sigma_x
    }

    pub fn sigma_y(&self) -> &SymmetricMatrix {
        &self.sigma_y
    }

    pub fn sigma_yx(&self) -> &Array2<f64> {
        &self.sigma_yx
    }

    pub fn eig_x(&self) -> &TruncatedEig {
        &self.eig_x
    }

    pub fn eig_y(&self) -> &TruncatedEig {
        &self.eig_y
    }

    pub fn rank_x(&self) -> usize {
        self.eig_x.rank()
    }

    pub fn rank_y(&self) -> usize {
        self.eig_y.rank()
    }

    pub fn x_dim(&self) -> usize {
        self.sigma_x.dim()
    }

    pub fn y_dim(&self) -> usize {
        self.sigma_y.dim()
    }
}

/// Mean-centered covariance estimates with divisor `k - 1`; ranks via the
/// default machine-epsilon cutoff.
pub fn covariances(data: &PairedDataset) -> Result<CovarianceSet> {
    covariances_with_policy(data, CutoffPolicy::MachineEps)
}

/// As [`covariances`] with an explicit rank cutoff, e.g.
/// `CutoffPolicy::FixedRank(k - 1)` for generic continuous data.
pub fn covariances_with_policy(
    data: &PairedDataset,
    cutoff: CutoffPolicy,
) -> Result<CovarianceSet> {
    let k = data.sample_count();
    if k < 2 {
        return Err(Error::InsufficientData { k });
    }
    let xc = centered(data.x());
    let yc = centered(data.y());
    let divisor = (k - 1) as f64;

    let sigma_x = SymmetricMatrix::symmetrized(xc.dot(&xc.t()) / divisor)?;
    let sigma_y = SymmetricMatrix::symmetrized(yc.dot(&yc.t()) / divisor)?;
    let sigma_yx = yc.dot(&xc.t()) / divisor;

    let eig_x = truncated_eig(&sigma_x, cutoff)?;
    let eig_y = truncated_eig(&sigma_y, cutoff)?;

    Ok(CovarianceSet {
        sigma_x,
        sigma_y,
        sigma_yx,
        eig_x,
        eig_y,
    })
}

/// Subtract the per-dimension mean (mean over columns).
fn centered(m: &Array2<f64>) -> Array2<f64> {
    let mean = m.mean_axis(Axis(1)).expect("at least one sample");
    m - &mean.insert_axis(Axis(1))
}

/// A structure-matrix estimate for one direction. For the forward direction
/// the matrix maps the X space into the Y space (`m x n`); backward is the
/// reverse.
///
/// Built through [`structure_estimate`] the kernel contains the kernel of
/// the regressor covariance; the sparse refit of
/// [`crate::sparse_noisy::sparse_structure_estimate`] does not maintain
/// that property.
#[derive(Debug, Clone)]
pub struct StructureEstimate {
    a_hat: Array2<f64>,
    direction: Direction,
}

impl StructureEstimate {
    pub(crate) fn from_parts(a_hat: Array2<f64>, direction: Direction) -> Self {
        Self { a_hat, direction }
    }

    pub fn a_hat(&self) -> &Array2<f64> {
        &self.a_hat
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }
}

/// The covariance-quotient estimator: forward is the cross covariance times
/// the pseudoinverse of the X covariance; backward swaps the roles of X
/// and Y. Rank deficiency is absorbed by the pseudoinverse.
pub fn structure_estimate(cov: &CovarianceSet, direction: Direction) -> StructureEstimate {
    let (cross, eig) = match direction {
        Direction::Forward => (cov.sigma_yx.clone(), &cov.eig_x),
        Direction::Backward => (cov.sigma_yx.t().to_owned(), &cov.eig_y),
    };
    // cross * V S^{-1} V^T, grouped to stay in the rank-r subspace
    let a_hat = if eig.rank() == 0 {
        Array2::zeros(cross.dim())
    } else {
        let v = eig.eigenvectors();
        let mut projected = cross.dot(v);
        for (j, &s) in eig.eigenvalues().iter().enumerate() {
            projected.column_mut(j).mapv_inplace(|v| v / s);
        }
        projected.dot(&v.t())
    };
    StructureEstimate { a_hat, direction }
}
