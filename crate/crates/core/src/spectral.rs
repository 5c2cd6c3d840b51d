//! Spectral similarity baselines: the regularized resolvent-kernel method
//! and the classic unregularized absolute-eigenvector method.

use nalgebra::DMatrix;
use ndarray::Array2;

use crate::error::{Error, Result};
use crate::types::SymMatrix;

/// Symmetric eigendecomposition with a fixed convention: eigenvalues
/// ascending, each eigenvector's largest-magnitude coordinate positive.
fn sorted_eigen(m: &SymMatrix) -> (Vec<f64>, Array2<f64>) {
    let n = m.n();
    let dm = DMatrix::from_fn(n, n, |i, j| m.as_array()[[i, j]]);
    let eig = dm.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].partial_cmp(&eig.eigenvalues[j]).unwrap());
    let mut values = Vec::with_capacity(n);
    let mut vectors = Array2::zeros((n, n));
    for (col, &idx) in order.iter().enumerate() {
        values.push(eig.eigenvalues[idx]);
        let v = eig.eigenvectors.column(idx);
        let mut pivot = 0;
        for r in 1..n {
            if v[r].abs() > v[pivot].abs() {
                pivot = r;
            }
        }
        let sign = if v[pivot] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            vectors[[r, col]] = sign * v[r];
        }
    }
    (values, vectors)
}

/// Regularized spectral similarity:
/// X = sum_{i,j} v_i v_i^T J w_j w_j^T / (eta^2 + (lambda_i - mu_j)^2),
/// assembled as V (K .* (V^T 1)(1^T W)) W^T.
pub fn grampa_similarity(a: &SymMatrix, b: &SymMatrix, eta: f64) -> Result<Array2<f64>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), got: b.n() });
    }
    let n = a.n();
    let (lambda, v) = sorted_eigen(a);
    let (mu, w) = sorted_eigen(b);
    // V^T J W = (V^T 1)(1^T W), both factors cheap
    let vt_ones: Vec<f64> = (0..n).map(|i| v.column(i).sum()).collect();
    let wt_ones: Vec<f64> = (0..n).map(|j| w.column(j).sum()).collect();
    let mut inner = Array2::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            let gap = lambda[i] - mu[j];
            let denom = eta * eta + gap * gap;
            if denom == 0.0 {
                return Err(Error::Numeric(format!(
                    "zero kernel denominator: eta = 0 with coincident eigenvalues \
                     lambda[{i}] = mu[{j}] = {}",
                    lambda[i]
                )));
            }
            inner[[i, j]] = vt_ones[i] * wt_ones[j] / denom;
        }
    }
    Ok(v.dot(&inner).dot(&w.t()))
}

/// Unregularized spectral similarity: |V| |W|^T with eigenvectors sorted by
/// ascending eigenvalue and taken entrywise-absolute.
pub fn umeyama_similarity(a: &SymMatrix, b: &SymMatrix) -> Result<Array2<f64>> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), got: b.n() });
    }
    let (_, v) = sorted_eigen(a);
    let (_, w) = sorted_eigen(b);
    Ok(v.mapv(f64::abs).dot(&w.mapv(f64::abs).t()))
}

/// Smallest eigenvalue of a symmetric matrix; used to verify positive
/// definiteness of similarity matrices.
pub fn min_eigenvalue(m: &Array2<f64>) -> f64 {
    let n = m.nrows();
    let dm = DMatrix::from_fn(n, n, |i, j| (m[[i, j]] + m[[j, i]]) / 2.0);
    dm.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_models::sample_goe;
    use crate::rounding::gmwm;
    use ndarray::array;

    #[test]
    fn scalar_cases() {
        let a = SymMatrix::new(array![[2.0]]).unwrap();
        let b = SymMatrix::new(array![[0.5]]).unwrap();
        let eta = 0.3;
        let x = grampa_similarity(&a, &b, eta).unwrap();
        let expect = 1.0 / (eta * eta + 1.5f64 * 1.5);
        assert!((x[[0, 0]] - expect).abs() < 1e-14);
        let u = umeyama_similarity(&a, &b).unwrap();
        assert!((u[[0, 0]] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn zero_eta_with_coincident_spectrum_is_an_error() {
        let a = sample_goe(5, 1).unwrap();
        assert!(grampa_similarity(&a, &a, 0.0).is_err());
        assert!(grampa_similarity(&a, &a, 0.2).is_ok());
    }

    #[test]
    fn noiseless_similarity_rounds_to_identity() {
        for seed in 0..5 {
            let a = sample_goe(40, 100 + seed).unwrap();
            for eta in [0.05, 0.2, 1.0] {
                let x = grampa_similarity(&a, &a, eta).unwrap();
                assert!(gmwm(&x).unwrap().is_identity(), "seed {seed}, eta {eta}");
                // the kernel's eigenvalues decay below machine precision, so
                // "positive definite" is asserted up to eigensolver resolution
                let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                assert!(min_eigenvalue(&x) > -1e-10 * scale, "seed {seed}, eta {eta}");
            }
        }
    }

    #[test]
    fn umeyama_noiseless_unit_diagonal() {
        let a = sample_goe(30, 7).unwrap();
        let u = umeyama_similarity(&a, &a).unwrap();
        for i in 0..30 {
            assert!((u[[i, i]] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn outputs_are_deterministic() {
        let a = sample_goe(20, 9).unwrap();
        let b = sample_goe(20, 10).unwrap();
        assert_eq!(
            grampa_similarity(&a, &b, 0.2).unwrap(),
            grampa_similarity(&a, &b, 0.2).unwrap()
        );
        assert_eq!(umeyama_similarity(&a, &b).unwrap(), umeyama_similarity(&a, &b).unwrap());
    }
}
