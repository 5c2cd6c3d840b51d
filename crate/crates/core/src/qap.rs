//! The matching objective ||AX - XB||_F^2, its gradient, the closed-form
//! expected gradient under the Gaussian Wigner model, and the efficiency-ratio
//! diagnostic used to compare mirror descent against projected gradient.

use ndarray::Array2;
use rand::Rng;

use crate::error::{Error, Result};
use crate::seed::rng_from;
use crate::types::SymMatrix;

/// Holds the input pair with A^2 and B^2 cached, so each solver iteration
/// costs three matrix multiplies.
#[derive(Debug, Clone)]
pub struct EnergyContext {
    a: Array2<f64>,
    b: Array2<f64>,
    a2: Array2<f64>,
    b2: Array2<f64>,
}

impl EnergyContext {
    pub fn new(a: &SymMatrix, b: &SymMatrix) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::DimensionMismatch { expected: a.n(), got: b.n() });
        }
        let a = a.as_array().clone();
        let b = b.as_array().clone();
        Ok(Self { a2: a.dot(&a), b2: b.dot(&b), a, b })
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &Array2<f64> {
        &self.a
    }

    pub fn b(&self) -> &Array2<f64> {
        &self.b
    }

    fn check_dims(&self, x: &Array2<f64>) -> Result<()> {
        if x.nrows() != self.n() || x.ncols() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: x.nrows() });
        }
        Ok(())
    }

    /// E(X) = ||AX - XB||_F^2.
    pub fn energy(&self, x: &Array2<f64>) -> Result<f64> {
        self.check_dims(x)?;
        let r = self.a.dot(x) - x.dot(&self.b);
        Ok(r.iter().map(|v| v * v).sum())
    }

    /// Descent direction A^2 X + X B^2 - 2 A X B. This is the gradient of
    /// the halved energy (1/2)|AX - XB|^2; the constant factor is absorbed
    /// into the step size everywhere downstream.
    pub fn gradient(&self, x: &Array2<f64>) -> Result<Array2<f64>> {
        self.check_dims(x)?;
        let mut g = self.a2.dot(x);
        g += &x.dot(&self.b2);
        g -= &(self.a.dot(x).dot(&self.b) * 2.0);
        Ok(g)
    }
}

/// Closed-form expected gradient under the Gaussian Wigner model with
/// identity ground truth:
/// (2 + sigma^2)((n+1)/n) X - (2/n)(Tr(X) Id + X^T).
pub fn population_gradient(x: &Array2<f64>, sigma: f64) -> Array2<f64> {
    let n = x.nrows() as f64;
    let c1 = (2.0 + sigma * sigma) * (n + 1.0) / n;
    let trace = x.diag().sum();
    let mut g = x * c1;
    for i in 0..x.nrows() {
        g[[i, i]] -= 2.0 / n * trace;
    }
    g -= &(x.t().to_owned() * (2.0 / n));
    g
}

/// Estimate of rho_E = sqrt(log n) * L_inf / L_2, with both Lipschitz
/// constants estimated by maxima of gradient norms over flat-Dirichlet
/// samples on the simplex.
pub fn efficiency_ratio(ctx: &EnergyContext, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let n = ctx.n();
    let mut rng = rng_from(seed);
    let mut max_inf: f64 = 0.0;
    let mut max_fro: f64 = 0.0;
    for _ in 0..samples {
        // flat Dirichlet on n^2 coordinates via normalized exponentials
        let mut x = Array2::zeros((n, n));
        let mut total = 0.0;
        for v in x.iter_mut() {
            let e = -(1.0 - rng.gen::<f64>()).ln();
            *v = e;
            total += e;
        }
        x /= total;
        let g = ctx.gradient(&x)?;
        let inf = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let fro = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        max_inf = max_inf.max(inf);
        max_fro = max_fro.max(fro);
    }
    if max_fro == 0.0 {
        return Ok((n as f64).ln().sqrt());
    }
    Ok((n as f64).ln().sqrt() * max_inf / max_fro)
}

/// Test-only builder for the vectorized operator H = (Id x A - B x Id)^2;
/// quadratic in n^2 memory, intended for very small instances.
pub fn kronecker_hessian(a: &SymMatrix, b: &SymMatrix) -> Array2<f64> {
    let n = a.n();
    let a = a.as_array();
    let b = b.as_array();
    // vec(X) indexed column-major as x[(j, i)] -> j * n + i? We use vec by
    // rows: index (i, j) -> i * n + j; (Id x A - B x Id) maps vec(AX - XB).
    // With row-major vec, AX has operator A x Id and XB has Id x B^T.
    let mut m = Array2::zeros((n * n, n * n));
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                // (AX)_{ij} = sum_k A_{ik} X_{kj}
                m[[row, k * n + j]] += a[[i, k]];
                // (XB)_{ij} = sum_k X_{ik} B_{kj}
                m[[row, i * n + k]] -= b[[k, j]];
            }
        }
    }
    m.t().dot(&m)
}
