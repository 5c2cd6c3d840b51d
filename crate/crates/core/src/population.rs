//! Deterministic dynamics of the expected gradient under the Gaussian Wigner
//! model with identity ground truth.
//!
//! Every iterate has only two distinct entry values (one diagonal, one
//! off-diagonal), so the whole trajectory reduces to a two-number recursion.
//! These trajectories serve as exact oracles for the stochastic solver.

use crate::error::{Error, Result};

/// Two-value representation of a population iterate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationState {
    pub n: usize,
    /// common diagonal entry
    pub x_diag: f64,
    /// common off-diagonal entry
    pub x_off: f64,
    /// iteration index
    pub k: usize,
}

impl PopulationState {
    /// a_sigma = 2 + ((n+1)/n) sigma^2, the off-diagonal gradient coefficient.
    pub fn a_sigma(n: usize, sigma: f64) -> f64 {
        2.0 + (n as f64 + 1.0) / n as f64 * sigma * sigma
    }

    /// Off-diagonal over diagonal entry ratio.
    pub fn ratio(&self) -> f64 {
        self.x_off / self.x_diag
    }

    /// n * x_diag + n(n-1) * x_off, which the dynamics keep at 1.
    pub fn total_mass(&self) -> f64 {
        let n = self.n as f64;
        n * self.x_diag + n * (n - 1.0) * self.x_off
    }

    /// Greedy rounding of the two-value matrix returns the identity exactly
    /// when the diagonal value wins.
    pub fn rounds_to_identity(&self) -> bool {
        self.x_diag > self.x_off
    }
}

/// Initial state: the barycenter J/n^2.
pub fn pop_init(n: usize) -> Result<PopulationState> {
    if n < 2 {
        return Err(Error::InvalidParameter("population dynamics need n >= 2".into()));
    }
    let v = 1.0 / (n * n) as f64;
    Ok(PopulationState { n, x_diag: v, x_off: v, k: 0 })
}

/// One entropic step against the expected gradient:
/// x_diag scales by exp(-gamma (a_sigma - 2) x_diag), x_off by
/// exp(-gamma a_sigma x_off), then the total mass is renormalized to 1.
pub fn pop_step(s: &PopulationState, sigma: f64, gamma: f64) -> Result<PopulationState> {
    if gamma < 0.0 {
        return Err(Error::InvalidParameter("gamma must be >= 0".into()));
    }
    let n = s.n as f64;
    let a = PopulationState::a_sigma(s.n, sigma);
    let diag = s.x_diag * (-gamma * (a - 2.0) * s.x_diag).exp();
    let off = s.x_off * (-gamma * a * s.x_off).exp();
    let mass = n * diag + n * (n - 1.0) * off;
    Ok(PopulationState {
        n: s.n,
        x_diag: diag / mass,
        x_off: off / mass,
        k: s.k + 1,
    })
}

/// Closed-form recursion for the off/diagonal ratio along a rate schedule:
/// r_1 = exp(-2 gamma_0 / n^2), then
/// r_k = r_{k-1} exp(-gamma_{k-1} (a r_{k-1} - (a-2)) / (n(n-1) r_{k-1} + n)).
pub fn ratio_recursion(n: usize, sigma: f64, rates: &[f64]) -> Result<Vec<f64>> {
    if rates.is_empty() {
        return Err(Error::InvalidParameter("rates must be nonempty".into()));
    }
    if rates.iter().any(|&g| g < 0.0) {
        return Err(Error::InvalidParameter("rates must be nonnegative".into()));
    }
    let nf = n as f64;
    let a = PopulationState::a_sigma(n, sigma);
    let mut out = Vec::with_capacity(rates.len());
    let mut r = (-2.0 * rates[0] / (nf * nf)).exp();
    out.push(r);
    for &gamma in &rates[1..] {
        let exponent = gamma * (a * r - (a - 2.0)) / (nf * (nf - 1.0) * r + nf);
        r *= (-exponent).exp();
        out.push(r);
    }
    Ok(out)
}

/// Strict multi-step sufficiency bound on the rate sum:
/// sum gamma_k < ((n-1)/4) log 2.
pub fn check_multistep_rates(n: usize, rates: &[f64]) -> bool {
    let total: f64 = rates.iter().sum();
    total < (n as f64 - 1.0) / 4.0 * 2.0f64.ln()
}

/// Builds a rate schedule that pins the off/diagonal ratio to
/// ((a-2)/a) g_k at every step k = 1..gaps.len().
///
/// gamma_0 inverts the one-step ratio; each later gamma_k comes from the
/// exact relation gamma_k * delta_k = log(g_k / g_{k+1}) with
/// delta_k = a(a-2)(g_k - 1) / (n (a + (a-2)(n-1) g_k)).
pub fn rates_for_gaps(n: usize, sigma: f64, gaps: &[f64]) -> Result<Vec<f64>> {
    if sigma <= 0.0 {
        return Err(Error::InvalidParameter(
            "rate schedule degenerates at sigma = 0".into(),
        ));
    }
    if gaps.is_empty() {
        return Err(Error::InvalidParameter("gaps must be nonempty".into()));
    }
    let nf = n as f64;
    let a = PopulationState::a_sigma(n, sigma);
    let scale = (a - 2.0) / a;
    for (i, &g) in gaps.iter().enumerate() {
        if g.is_nan() || g <= 0.0 || scale * g >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "gap g_{} = {g} out of admissible range (0, {})",
                i + 1,
                1.0 / scale
            )));
        }
    }
    let mut rates = Vec::with_capacity(gaps.len());
    let gamma0 = nf * nf / 2.0 * (a / ((a - 2.0) * gaps[0])).ln();
    if gamma0 < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "gap g_1 = {} needs a negative initial rate",
            gaps[0]
        )));
    }
    rates.push(gamma0);
    for k in 1..gaps.len() {
        let (g, g_next) = (gaps[k - 1], gaps[k]);
        if g_next == g {
            rates.push(0.0);
            continue;
        }
        let delta = a * (a - 2.0) * (g - 1.0) / (nf * (a + (a - 2.0) * (nf - 1.0) * g));
        if delta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gap g_{k} = {g} leaves the ratio unmovable"
            )));
        }
        let gamma = (g / g_next).ln() / delta;
        if gamma < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gap increase g_{k} -> g_{} needs a negative rate",
                k + 1
            )));
        }
        rates.push(gamma);
    }
    Ok(rates)
}
