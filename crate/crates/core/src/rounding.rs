//! Greedy maximum-weight matching rounding and overlap scoring.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::types::Permutation;

/// Greedy maximum-weight matching: repeatedly take the largest remaining
/// entry, assign its row to its column, and remove both.
///
/// Implemented as one global sort of all n^2 entries plus used-row/used-col
/// masks. Ties break by larger value, then smaller row, then smaller column.
pub fn gmwm(c: &Array2<f64>) -> Result<Permutation> {
    let n = c.nrows();
    if n != c.ncols() {
        return Err(Error::DimensionMismatch { expected: n, got: c.ncols() });
    }
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("similarity matrix".into()));
    }
    let mut entries: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push((c[[i, j]], i, j));
        }
    }
    entries.sort_unstable_by(|a, b| {
        b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
    });
    let mut row_used = vec![false; n];
    let mut col_used = vec![false; n];
    let mut map = vec![usize::MAX; n];
    let mut assigned = 0;
    for (_, i, j) in entries {
        if !row_used[i] && !col_used[j] {
            row_used[i] = true;
            col_used[j] = true;
            map[i] = j;
            assigned += 1;
            if assigned == n {
                break;
            }
        }
    }
    Permutation::new(map)
}

/// Recovery fraction: the share of indices where both permutations agree.
pub fn overlap(p: &Permutation, p_star: &Permutation) -> Result<f64> {
    if p.n() != p_star.n() {
        return Err(Error::DimensionMismatch { expected: p_star.n(), got: p.n() });
    }
    let hits = (0..p.n()).filter(|&i| p.map(i) == p_star.map(i)).count();
    Ok(hits as f64 / p.n() as f64)
}
