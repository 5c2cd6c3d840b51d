//! Shared matrix and permutation types.

use ndarray::Array2;

use crate::error::{Error, Result};

/// Dense real symmetric matrix (adjacency or Gaussian ensemble sample).
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    data: Array2<f64>,
}

impl SymMatrix {
    /// Wraps a matrix, checking exact symmetry and finiteness.
    pub fn new(data: Array2<f64>) -> Result<Self> {
        let (r, c) = data.dim();
        if r != c {
            return Err(Error::DimensionMismatch { expected: r, got: c });
        }
        for i in 0..r {
            for j in 0..i {
                if data[[i, j]] != data[[j, i]] {
                    return Err(Error::InvalidParameter(format!(
                        "matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("SymMatrix entries".into()));
        }
        Ok(Self { data })
    }

    /// Builds from the upper triangle (i <= j), mirroring below the diagonal.
    pub fn from_upper(n: usize, mut fill: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Array2::zeros((n, n));
        for i in 0..n {
            for j in i..n {
                let v = fill(i, j);
                data[[i, j]] = v;
                data[[j, i]] = v;
            }
        }
        Self { data }
    }

    pub fn zeros(n: usize) -> Self {
        Self { data: Array2::zeros((n, n)) }
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn as_array(&self) -> &Array2<f64> {
        &self.data
    }

    pub fn into_array(self) -> Array2<f64> {
        self.data
    }

    /// True if every entry is exactly 0.0 or 1.0.
    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0 || v == 1.0)
    }

    /// Conjugation by a permutation: output entry (p(i), p(j)) equals input (i, j).
    pub fn conjugate(&self, perm: &Permutation) -> SymMatrix {
        let n = self.n();
        let mut out = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                out[[perm.map(i), perm.map(j)]] = self.data[[i, j]];
            }
        }
        SymMatrix { data: out }
    }
}

/// A bijection on {0..n-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(Error::InvalidParameter("not a bijection".into()));
            }
            seen[v] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    pub fn n(&self) -> usize {
        self.map.len()
    }

    pub fn map(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// Composition (self ∘ other): i -> self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { map: other.map.iter().map(|&i| self.map[i]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// 0/1 matrix view with entry (i, p(i)) = 1.
    pub fn to_matrix(&self) -> Array2<f64> {
        let n = self.map.len();
        let mut m = Array2::zeros((n, n));
        for (i, &j) in self.map.iter().enumerate() {
            m[[i, j]] = 1.0;
        }
        m
    }
}
