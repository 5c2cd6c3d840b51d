//! Seeded samplers for the correlated random graph models, plus real-graph
//! ingestion and edge subsampling.
//!
//! All samplers are pure functions of (parameters, seed): the same seed gives
//! bit-identical output on every run and thread.

use std::path::Path;

use ndarray::Array2;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::{derive, rng_from, NormalSource};
use crate::types::{Permutation, SymMatrix};

/// Which generative model a benchmark draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ModelKind {
    /// Correlated Gaussian Wigner: B = conj(A) + sigma * Z with A, Z GOE(n).
    Cgw,
    /// Correlated Erdos-Renyi with conditional flip rates sigma^2(1-p), sigma^2 p.
    Cer,
    /// Two independent edge retentions of a parent graph.
    Subsample,
}

/// Parameter bundle for a sampler invocation. Fields irrelevant to `kind`
/// are ignored.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub n: usize,
    #[serde(default)]
    pub sigma: f64,
    #[serde(default)]
    pub p: f64,
    #[serde(default)]
    pub s: f64,
    #[serde(default)]
    pub seed: u64,
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        if self.sigma < 0.0 {
            return Err(Error::InvalidParameter("sigma must be >= 0".into()));
        }
        match self.kind {
            ModelKind::Cgw => {
                if self.n == 0 {
                    return Err(Error::InvalidParameter("n must be >= 1".into()));
                }
            }
            ModelKind::Cer => {
                check_cer_params(self.sigma, self.p)?;
            }
            ModelKind::Subsample => {
                if !(0.0..=1.0).contains(&self.s) {
                    return Err(Error::InvalidParameter("s must be in [0,1]".into()));
                }
            }
        }
        Ok(())
    }
}

fn check_cer_params(sigma: f64, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter("p must be in [0,1]".into()));
    }
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::InvalidParameter("sigma must be in [0,1] for CER".into()));
    }
    if sigma * sigma * (1.0 - p) > 1.0 || sigma * sigma * p > 1.0 {
        return Err(Error::InvalidParameter("flip probabilities out of [0,1]".into()));
    }
    Ok(())
}

/// Samples a GOE(n) matrix: off-diagonal variance 1/n, diagonal variance 2/n.
pub fn sample_goe(n: usize, seed: u64) -> Result<SymMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut src = NormalSource::new(seed);
    let sqrt_inv_n = (1.0 / n as f64).sqrt();
    let sqrt_two_inv_n = (2.0 / n as f64).sqrt();
    Ok(SymMatrix::from_upper(n, |i, j| {
        let z = src.sample();
        if i == j {
            z * sqrt_two_inv_n
        } else {
            z * sqrt_inv_n
        }
    }))
}

/// Samples a correlated Gaussian Wigner pair: B places entry (i,j) of A at
/// (perm(i), perm(j)) and adds sigma times an independent GOE draw.
pub fn sample_cgw(
    n: usize,
    sigma: f64,
    perm: &Permutation,
    seed: u64,
) -> Result<(SymMatrix, SymMatrix)> {
    if sigma < 0.0 {
        return Err(Error::InvalidParameter("sigma must be >= 0".into()));
    }
    if perm.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: perm.n() });
    }
    let a = sample_goe(n, derive(seed, &[0]))?;
    let conj = a.conjugate(perm);
    if sigma == 0.0 {
        return Ok((a, conj));
    }
    let z = sample_goe(n, derive(seed, &[1]))?;
    let b = SymMatrix::new(conj.into_array() + &(z.as_array() * sigma))?;
    Ok((a, b))
}

/// Samples a correlated Erdos-Renyi pair: A ~ G(n,p), and the aligned B keeps
/// an edge with probability 1 - sigma^2(1-p) and creates one with sigma^2 p.
/// Both graphs are simple (0/1, zero diagonal).
pub fn sample_cer(
    n: usize,
    sigma: f64,
    p: f64,
    perm: &Permutation,
    seed: u64,
) -> Result<(SymMatrix, SymMatrix)> {
    check_cer_params(sigma, p)?;
    if perm.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: perm.n() });
    }
    let mut rng = rng_from(seed);
    let keep = 1.0 - sigma * sigma * (1.0 - p);
    let create = sigma * sigma * p;
    let mut a = Array2::zeros((n, n));
    let mut b_aligned = Array2::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            let edge = rng.gen::<f64>() < p;
            let u: f64 = rng.gen();
            let b_edge = if edge { u < keep } else { u < create };
            if edge {
                a[[i, j]] = 1.0;
                a[[j, i]] = 1.0;
            }
            if b_edge {
                b_aligned[[i, j]] = 1.0;
                b_aligned[[j, i]] = 1.0;
            }
        }
    }
    let a = SymMatrix::new(a)?;
    let b = SymMatrix::new(b_aligned)?.conjugate(perm);
    Ok((a, b))
}

/// Standardizes a CER adjacency matrix: (A - p(J - Id)) / (p(1-p)n).
pub fn standardize_cer(a: &SymMatrix, p: f64) -> Result<SymMatrix> {
    if p <= 0.0 || p >= 1.0 {
        return Err(Error::InvalidParameter("p must be in (0,1)".into()));
    }
    let n = a.n();
    let denom = p * (1.0 - p) * n as f64;
    let mut out = a.as_array().clone();
    for i in 0..n {
        for j in 0..n {
            let mean = if i == j { 0.0 } else { p };
            out[[i, j]] = (out[[i, j]] - mean) / denom;
        }
    }
    SymMatrix::new(out)
}

/// Uniform permutation via Fisher-Yates, deterministic per seed.
pub fn sample_permutation(n: usize, seed: u64) -> Result<Permutation> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut rng = rng_from(seed);
    let mut map: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        map.swap(i, j);
    }
    Permutation::new(map)
}

/// Two independent s-retentions of a binary parent graph H.
pub fn subsample_pair(h: &SymMatrix, s: f64, seed: u64) -> Result<(SymMatrix, SymMatrix)> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidParameter("s must be in [0,1]".into()));
    }
    if !h.is_binary() {
        return Err(Error::InvalidParameter("parent graph must be 0/1".into()));
    }
    let n = h.n();
    let mut rng = rng_from(seed);
    let mut a = Array2::zeros((n, n));
    let mut b = Array2::zeros((n, n));
    for i in 0..n {
        for j in (i + 1)..n {
            if h.as_array()[[i, j]] == 1.0 {
                if rng.gen::<f64>() < s {
                    a[[i, j]] = 1.0;
                    a[[j, i]] = 1.0;
                }
                if rng.gen::<f64>() < s {
                    b[[i, j]] = 1.0;
                    b[[j, i]] = 1.0;
                }
            }
        }
    }
    Ok((SymMatrix::new(a)?, SymMatrix::new(b)?))
}

/// Loads an undirected edge list ("u v" per line, '#' comments) as a binary
/// adjacency matrix. Self-loops are dropped; duplicates are idempotent.
pub fn load_edge_list(path: &Path, n_hint: Option<usize>) -> Result<SymMatrix> {
    let text = std::fs::read_to_string(path)?;
    let mut edges = Vec::new();
    let mut max_id = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            let tok = tok.ok_or_else(|| Error::Parse {
                line: lineno + 1,
                msg: "expected two vertex ids".into(),
            })?;
            tok.parse().map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: format!("bad vertex id {tok:?}: {e}"),
            })
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Parse { line: lineno + 1, msg: "trailing tokens".into() });
        }
        max_id = max_id.max(u).max(v);
        if u != v {
            edges.push((u, v));
        }
    }
    let n = n_hint.unwrap_or(0).max(if edges.is_empty() && max_id == 0 { 0 } else { max_id + 1 });
    let mut a = Array2::zeros((n, n));
    for (u, v) in edges {
        a[[u, v]] = 1.0;
        a[[v, u]] = 1.0;
    }
    SymMatrix::new(a)
}
