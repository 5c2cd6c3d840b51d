//! Sufficiency-condition checkers, per-iterate property summaries and the
//! error CDF.
//!
//! A similarity matrix C rounds to the identity whenever, for every pair
//! i != j, the larger of the two diagonal entries beats the larger of the two
//! cross entries (max form). The sum form C_ii + C_jj > 2 C_ij is the variant
//! used for symmetric matrices; diagonal dominance is strictly stronger than
//! either. All checks use strict inequality: an exact tie counts as a failure.

use ndarray::Array2;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rounding::{gmwm, overlap};
use crate::types::Permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuffCondVariant {
    /// Entry (i,j) fails when C_ij >= C_ii v C_jj.
    Max,
    /// Entry (i,j) fails when 2 C_ij >= C_ii + C_jj.
    Sum,
    /// Entry (i,j) fails when C_ij v C_ji >= C_ii + C_jj.
    SumMax,
}

/// Counts ordered off-diagonal entries violating the chosen condition.
/// Zero failures in the Max variant is exactly the sufficiency condition for
/// greedy rounding to return the identity.
pub fn count_suffcond_failures(c: &Array2<f64>, variant: SuffCondVariant) -> Result<usize> {
    let n = c.nrows();
    if n != c.ncols() {
        return Err(Error::DimensionMismatch { expected: n, got: c.ncols() });
    }
    let mut failures = 0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let violated = match variant {
                SuffCondVariant::Max => c[[i, j]] >= c[[i, i]].max(c[[j, j]]),
                SuffCondVariant::Sum => 2.0 * c[[i, j]] >= c[[i, i]] + c[[j, j]],
                SuffCondVariant::SumMax => {
                    c[[i, j]].max(c[[j, i]]) >= c[[i, i]] + c[[j, j]]
                }
            };
            if violated {
                failures += 1;
            }
        }
    }
    Ok(failures)
}

/// Rows whose diagonal entry does not strictly dominate the rest of the row.
pub fn count_nondominant_rows(c: &Array2<f64>) -> Result<usize> {
    let n = c.nrows();
    if n != c.ncols() {
        return Err(Error::DimensionMismatch { expected: n, got: c.ncols() });
    }
    let mut count = 0;
    for i in 0..n {
        let off_max = (0..n)
            .filter(|&j| j != i)
            .map(|j| c[[i, j]])
            .fold(f64::NEG_INFINITY, f64::max);
        if c[[i, i]] <= off_max {
            count += 1;
        }
    }
    Ok(count)
}

/// Property fractions for one similarity matrix, plus the rounded overlap.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub frac_suffcond_max: f64,
    pub frac_suffcond_sum: f64,
    pub frac_suffcond_summax: f64,
    pub frac_diag_dominant_rows: f64,
    pub overlap_after_rounding: f64,
}

/// Aligns X so the ground truth becomes the identity (column j of the output
/// is column p_star(j) of X), then computes all fractions and the overlap of
/// the greedy rounding against p_star.
pub fn property_report(x: &Array2<f64>, p_star: &Permutation) -> Result<PropertyReport> {
    let n = x.nrows();
    if n != x.ncols() {
        return Err(Error::DimensionMismatch { expected: n, got: x.ncols() });
    }
    if p_star.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: p_star.n() });
    }
    let aligned = Array2::from_shape_fn((n, n), |(i, j)| x[[i, p_star.map(j)]]);
    let pairs = (n * (n - 1)) as f64;
    let frac = |v: SuffCondVariant| -> Result<f64> {
        Ok(1.0 - count_suffcond_failures(&aligned, v)? as f64 / pairs)
    };
    Ok(PropertyReport {
        frac_suffcond_max: frac(SuffCondVariant::Max)?,
        frac_suffcond_sum: frac(SuffCondVariant::Sum)?,
        frac_suffcond_summax: frac(SuffCondVariant::SumMax)?,
        frac_diag_dominant_rows: 1.0 - count_nondominant_rows(&aligned)? as f64 / n as f64,
        overlap_after_rounding: overlap(&gmwm(x)?, p_star)?,
    })
}

/// Empirical CDF of a list of nonnegative errors on an ascending grid.
pub fn error_cdf(errors: &[f64], grid: &[f64]) -> Result<Vec<f64>> {
    if errors.is_empty() {
        return Err(Error::InvalidParameter("empty error list".into()));
    }
    if grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidParameter("grid must be ascending".into()));
    }
    let n = errors.len() as f64;
    Ok(grid
        .iter()
        .map(|&t| errors.iter().filter(|&&e| e <= t).count() as f64 / n)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from;
    use rand::Rng;
    use SuffCondVariant::{Max, Sum, SumMax};

    #[test]
    fn identity_has_no_failures() {
        let id = Array2::eye(5);
        for v in [Max, Sum, SumMax] {
            assert_eq!(count_suffcond_failures(&id, v).unwrap(), 0);
        }
        assert_eq!(count_nondominant_rows(&id).unwrap(), 0);
    }

    #[test]
    fn all_ones_fails_everywhere() {
        let n = 5;
        let j = Array2::from_elem((n, n), 1.0);
        // ties fail the strict inequalities
        assert_eq!(count_suffcond_failures(&j, Max).unwrap(), n * (n - 1));
        assert_eq!(count_suffcond_failures(&j, Sum).unwrap(), n * (n - 1));
        // 1 < 1 + 1, so the sum-max form holds
        assert_eq!(count_suffcond_failures(&j, SumMax).unwrap(), 0);
        assert_eq!(count_nondominant_rows(&j).unwrap(), n);
    }

    #[test]
    fn subdiagonal_trap_counts() {
        let n = 4;
        let mut c = Array2::from_elem((n, n), 1.0);
        for i in 0..n {
            c[[i, i]] = 2.0;
        }
        for i in 1..n {
            c[[i, i - 1]] = 3.0;
        }
        // exactly the 3 subdiagonal entries exceed both diagonal values
        assert_eq!(count_suffcond_failures(&c, Max).unwrap(), 3);
    }

    #[test]
    fn nondominant_row_hand_case() {
        let c = ndarray::array![[2.0, 1.0], [3.0, 1.0]];
        assert_eq!(count_nondominant_rows(&c).unwrap(), 1);
    }

    #[test]
    fn failures_invariant_under_positive_affine_maps() {
        let mut rng = rng_from(31);
        for _ in 0..100 {
            let n = rng.gen_range(2..=7);
            let c = Array2::from_shape_fn((n, n), |_| rng.gen::<f64>() * 4.0 - 2.0);
            let t = rng.gen::<f64>() * 2.0 + 0.1;
            let alpha = rng.gen::<f64>() * 6.0 - 3.0;
            let mapped = c.mapv(|v| t * v + alpha);
            for v in [Max, Sum] {
                assert_eq!(
                    count_suffcond_failures(&c, v).unwrap(),
                    count_suffcond_failures(&mapped, v).unwrap()
                );
            }
        }
    }

    #[test]
    fn implication_chain() {
        let mut rng = rng_from(32);
        for _ in 0..200 {
            let n = rng.gen_range(2..=7);
            let m = Array2::from_shape_fn((n, n), |_| rng.gen::<f64>() * 2.0 - 1.0);
            let sym = (&m + &m.t()) / 2.0;
            // diagonal dominance implies the max condition
            if count_nondominant_rows(&sym).unwrap() == 0 {
                assert_eq!(count_suffcond_failures(&sym, Max).unwrap(), 0);
            }
            // on symmetric matrices, the sum condition implies the max condition
            if count_suffcond_failures(&sym, Sum).unwrap() == 0 {
                assert_eq!(count_suffcond_failures(&sym, Max).unwrap(), 0);
            }
            // zero max failures imply greedy rounding returns the identity
            if count_suffcond_failures(&sym, Max).unwrap() == 0 {
                assert!(gmwm(&sym).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn spd_rounds_to_identity() {
        let mut rng = rng_from(33);
        for _ in 0..100 {
            let n = rng.gen_range(2..=8);
            let m = Array2::from_shape_fn((n, n), |_| rng.gen::<f64>() * 2.0 - 1.0);
            let spd = m.t().dot(&m) + Array2::<f64>::eye(n) * 1e-9;
            assert!(gmwm(&spd).unwrap().is_identity());
        }
    }

    #[test]
    fn property_report_extremes() {
        let id5 = Array2::eye(5);
        let r = property_report(&id5, &Permutation::identity(5)).unwrap();
        assert_eq!(r.frac_suffcond_max, 1.0);
        assert_eq!(r.frac_suffcond_sum, 1.0);
        assert_eq!(r.frac_suffcond_summax, 1.0);
        assert_eq!(r.frac_diag_dominant_rows, 1.0);
        assert_eq!(r.overlap_after_rounding, 1.0);

        let j = Array2::from_elem((5, 5), 1.0);
        let r = property_report(&j, &Permutation::identity(5)).unwrap();
        assert_eq!(r.frac_suffcond_max, 0.0);
        assert_eq!(r.frac_suffcond_sum, 0.0);
        assert_eq!(r.frac_diag_dominant_rows, 0.0);
    }

    #[test]
    fn error_cdf_counts() {
        assert_eq!(error_cdf(&[0.0, 0.0], &[0.0, 1.0]).unwrap(), vec![1.0, 1.0]);
        let cdf = error_cdf(&[0.0, 0.5, 2.0], &[0.0, 1.0, 3.0]).unwrap();
        for (got, expect) in cdf.iter().zip([1.0 / 3.0, 2.0 / 3.0, 1.0]) {
            assert!((got - expect).abs() < 1e-15);
        }
        assert!(error_cdf(&[], &[0.0]).is_err());
        assert!(error_cdf(&[0.1], &[1.0, 0.5]).is_err());
    }

    #[test]
    fn error_cdf_monotone_on_random_inputs() {
        let mut rng = rng_from(34);
        for _ in 0..50 {
            let errors: Vec<f64> = (0..30).map(|_| rng.gen::<f64>() * 3.0).collect();
            let mut grid: Vec<f64> = (0..10).map(|_| rng.gen::<f64>() * 3.0).collect();
            grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let cdf = error_cdf(&errors, &grid).unwrap();
            assert!(cdf.windows(2).all(|w| w[0] <= w[1]));
            assert!(cdf.iter().all(|&v| (0.0..=1.0).contains(&v)));
        }
    }
}
