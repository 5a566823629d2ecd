use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, UPLO};

use super::SymmetricMatrix;
use crate::error::{Error, Result};

/// Rule deciding which eigenvalues count as numerically nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutoffPolicy {
    /// Retain eigenvalues above `dim * machine_epsilon * lambda_max`, the
    /// standard numerical-rank rule for positive semidefinite input.
    #[default]
    MachineEps,
    /// Retain at most the top `r` positive eigenvalues. Useful when the rank
    /// is known a priori, e.g. `k - 1` for k generic continuous samples.
    FixedRank(usize),
}

/// Eigenvalues above the rank cutoff together with their orthonormal
/// eigenvectors, ordered nonincreasing.
#[derive(Debug, Clone)]
pub struct TruncatedEig {
    eigenvalues: Vec<f64>,
    /// `source_dim x rank`, orthonormal columns.
    eigenvectors: Array2<f64>,
    source_dim: usize,
}

impl TruncatedEig {
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Array2<f64> {
        &self.eigenvectors
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    /// `V S V^T`, the source restricted to its retained subspace.
    pub fn reconstruct(&self) -> Array2<f64> {
        self.weighted_outer(|s| s)
    }

    /// `V S^{-1} V^T`.
    pub fn pseudoinverse_matrix(&self) -> Array2<f64> {
        self.weighted_outer(|s| 1.0 / s)
    }

    fn weighted_outer(&self, f: impl Fn(f64) -> f64) -> Array2<f64> {
        if self.rank() == 0 {
            return Array2::zeros((self.source_dim, self.source_dim));
        }
        let weights = Array1::from_iter(self.eigenvalues.iter().map(|&s| f(s)));
        let scaled = &self.eigenvectors * &weights; // scales column j by weights[j]
        scaled.dot(&self.eigenvectors.t())
    }
}

/// Symmetric eigendecomposition truncated at the rank cutoff. Eigenvalues
/// come back nonincreasing; eigenvector column j pairs with eigenvalue j.
pub fn truncated_eig(m: &SymmetricMatrix, cutoff: CutoffPolicy) -> Result<TruncatedEig> {
    let dim = m.dim();
    let (vals, vecs) = m.as_array().eigh(UPLO::Lower).map_err(|e| {
        let max_abs = m.as_array().iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
        Error::Factorization {
            dim,
            max_abs,
            detail: e.to_string(),
        }
    })?;

    // LAPACK returns eigenvalues ascending; walk from the back.
    let lambda_max = vals[dim - 1];
    let keep = |lambda: f64| match cutoff {
        CutoffPolicy::MachineEps => lambda > dim as f64 * f64::EPSILON * lambda_max,
        CutoffPolicy::FixedRank(_) => lambda > 0.0,
    };
    let mut retained: Vec<usize> = (0..dim).rev().filter(|&i| keep(vals[i])).collect();
    if let CutoffPolicy::FixedRank(r) = cutoff {
        retained.truncate(r);
    }

    let rank = retained.len();
    let mut eigenvectors = Array2::zeros((dim, rank));
    let mut eigenvalues = Vec::with_capacity(rank);
    for (j, &i) in retained.iter().enumerate() {
        eigenvalues.push(vals[i]);
        eigenvectors.column_mut(j).assign(&vecs.column(i));
    }

    Ok(TruncatedEig {
        eigenvalues,
        eigenvectors,
        source_dim: dim,
    })
}

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix via its truncated
/// eigendecomposition.
pub fn pseudoinverse(m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let eig = truncated_eig(m, CutoffPolicy::MachineEps)?;
    SymmetricMatrix::symmetrized(eig.pseudoinverse_matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::RngStream;
    use ndarray::array;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn random_psd(dim: usize, rank: usize, seed: u64) -> SymmetricMatrix {
        let mut rng = RngStream::new(seed).rng();
        let g = Array2::from_shape_fn((dim, rank), |_| rng.sample::<f64, _>(StandardNormal));
        SymmetricMatrix::symmetrized(g.dot(&g.t())).unwrap()
    }

    #[test]
    fn diagonal_truncation() {
        let m = SymmetricMatrix::new(array![
            [4.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0]
        ])
        .unwrap();
        let eig = truncated_eig(&m, CutoffPolicy::MachineEps).unwrap();
        assert_eq!(eig.rank(), 2);
        assert_eq!(eig.eigenvalues(), &[4.0, 1.0]);
    }

    #[test]
    fn reconstruction_matches_source() {
        let m = random_psd(10, 10, 42);
        let eig = truncated_eig(&m, CutoffPolicy::MachineEps).unwrap();
        assert_eq!(eig.rank(), 10);
        let rebuilt = eig.reconstruct();
        let scale = m
            .as_array()
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        for (a, b) in rebuilt.iter().zip(m.as_array().iter()) {
            assert!((a - b).abs() <= 1e-8 * scale, "{a} vs {b}");
        }
    }

    #[test]
    fn eigenvector_columns_orthonormal() {
        let m = random_psd(12, 5, 3);
        let eig = truncated_eig(&m, CutoffPolicy::MachineEps).unwrap();
        assert_eq!(eig.rank(), 5);
        let v = eig.eigenvectors();
        let gram = v.t().dot(v);
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eigenvalues_nonincreasing() {
        let m = random_psd(15, 15, 9);
        let eig = truncated_eig(&m, CutoffPolicy::MachineEps).unwrap();
        for w in eig.eigenvalues().windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn fixed_rank_override() {
        let m = random_psd(8, 8, 11);
        let eig = truncated_eig(&m, CutoffPolicy::FixedRank(3)).unwrap();
        assert_eq!(eig.rank(), 3);
        // fixed rank never resurrects nonpositive eigenvalues
        let low = random_psd(8, 2, 12);
        let eig = truncated_eig(&low, CutoffPolicy::FixedRank(5)).unwrap();
        assert!(eig.rank() <= 5);
        assert!(eig.eigenvalues().iter().all(|&l| l > 0.0));
    }

    #[test]
    fn pseudoinverse_diagonal() {
        let m = SymmetricMatrix::new(array![[2.0, 0.0], [0.0, 0.0]]).unwrap();
        let p = pseudoinverse(&m).unwrap();
        assert!((p.as_array()[(0, 0)] - 0.5).abs() < 1e-14);
        assert_eq!(p.as_array()[(1, 1)], 0.0);
        assert_eq!(p.as_array()[(0, 1)], 0.0);
    }

    #[test]
    fn pseudoinverse_of_invertible_is_inverse() {
        let m = random_psd(6, 6, 5);
        let p = pseudoinverse(&m).unwrap();
        let prod = m.as_array().dot(p.as_array());
        for i in 0..6 {
            for j in 0..6 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)] - expect).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn pseudoinverse_gives_projector_onto_range() {
        // M M+ M = M and M M+ is the orthogonal projector onto range(M)
        let m = random_psd(9, 4, 7);
        let p = pseudoinverse(&m).unwrap();
        let proj = m.as_array().dot(p.as_array());
        let mmm = proj.dot(m.as_array());
        let scale = m
            .as_array()
            .iter()
            .fold(0.0_f64, |acc, v| acc.max(v.abs()));
        for (a, b) in mmm.iter().zip(m.as_array().iter()) {
            assert!((a - b).abs() <= 1e-8 * scale);
        }
        // projector: idempotent and symmetric
        let proj2 = proj.dot(&proj);
        for (a, b) in proj2.iter().zip(proj.iter()) {
            assert!((a - b).abs() < 1e-8);
        }
        for i in 0..9 {
            for j in 0..9 {
                assert!((proj[(i, j)] - proj[(j, i)]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn pseudoinverse_of_projector_is_itself() {
        let m = random_psd(10, 3, 21);
        let eig = truncated_eig(&m, CutoffPolicy::MachineEps).unwrap();
        let v = eig.eigenvectors().to_owned();
        let projector = SymmetricMatrix::symmetrized(v.dot(&v.t())).unwrap();
        let pinv = pseudoinverse(&projector).unwrap();
        for (a, b) in pinv.as_array().iter().zip(projector.as_array().iter()) {
            assert!((a - b).abs() < 1e-8);
        }
    }
}
