//! Iterative solvers on the unit simplex: the entropic mirror descent and
//! projected gradient pipelines, step-size policies and the exact Euclidean
//! simplex projection.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::qap::EnergyContext;

const SUM_TOL: f64 = 1e-10;

/// Nonnegative n x n matrix with total entry sum 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexMatrix {
    data: Array2<f64>,
}

impl SimplexMatrix {
    pub fn new(data: Array2<f64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::DimensionMismatch {
                expected: data.nrows(),
                got: data.ncols(),
            });
        }
        if data.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidParameter("entries must be finite and >= 0".into()));
        }
        let sum = data.sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidParameter(format!("entry sum {sum} != 1")));
        }
        // renormalize so downstream sums are exact
        Ok(Self { data: &data / sum })
    }

    /// The barycenter J/n^2, the solvers' initial point.
    pub fn barycenter(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be >= 1".into()));
        }
        Ok(Self { data: Array2::from_elem((n, n), 1.0 / (n * n) as f64) })
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
}

/// Euclidean projection onto {X >= 0, sum X = 1} by sort-and-threshold.
pub fn project_simplex(y: &Array2<f64>) -> Result<SimplexMatrix> {
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("projection input".into()));
    }
    let mut sorted: Vec<f64> = y.iter().cloned().collect();
    sorted.sort_unstable_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut nu = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        cumsum += v;
        let candidate = (cumsum - 1.0) / (k + 1) as f64;
        if v - candidate > 0.0 {
            nu = candidate;
        }
    }
    let projected = y.mapv(|v| (v - nu).max(0.0));
    let sum = projected.sum();
    SimplexMatrix::new(projected / sum)
}

/// One multiplicative-weights step: X' proportional to X .* exp(-gamma G).
/// The exponent is shifted by its minimum before exponentiation; the shift
/// cancels in the normalization and prevents overflow.
pub fn emd_step(x: &SimplexMatrix, g: &Array2<f64>, gamma: f64) -> Result<SimplexMatrix> {
    if gamma < 0.0 {
        return Err(Error::InvalidParameter("gamma must be >= 0".into()));
    }
    if g.dim() != x.as_array().dim() {
        return Err(Error::DimensionMismatch { expected: x.n(), got: g.nrows() });
    }
    if g.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("gradient".into()));
    }
    let shift = g.iter().cloned().fold(f64::INFINITY, f64::min) * gamma;
    let unnormalized = ndarray::Zip::from(x.as_array())
        .and(g)
        .map_collect(|&xv, &gv| xv * (-(gamma * gv - shift)).exp());
    let sum = unnormalized.sum();
    if sum <= 0.0 || !sum.is_finite() {
        return Err(Error::Numeric("entropic update collapsed to zero mass".into()));
    }
    SimplexMatrix::new(unnormalized / sum)
}

/// One projected-gradient step: proj(X - gamma G).
pub fn pgd_step(x: &SimplexMatrix, g: &Array2<f64>, gamma: f64) -> Result<SimplexMatrix> {
    if gamma < 0.0 {
        return Err(Error::InvalidParameter("gamma must be >= 0".into()));
    }
    if g.dim() != x.as_array().dim() {
        return Err(Error::DimensionMismatch { expected: x.n(), got: g.nrows() });
    }
    project_simplex(&(x.as_array() - &(g * gamma)))
}

/// Step-size policy. The fixed rules track the running maximum of the
/// relevant gradient norm as an observable stand-in for the Lipschitz
/// constant, so they are not constant in practice.
#[derive(Debug, Clone, PartialEq)]
pub enum StepRule {
    /// sqrt(2 log n) * L_hat_inf / sqrt(N+1)
    FixedMd { n_iters: usize },
    /// sqrt(2) * L_hat_fro / sqrt(N+1)
    FixedPgd { n_iters: usize },
    /// sqrt(2) / (||G||_inf sqrt(k+1)), zero on a vanishing gradient
    DynamicMd,
    /// sqrt(2) / (||G||_F sqrt(k+1)), zero on a vanishing gradient
    DynamicPgd,
    /// theta * ||G||_F^2 / E^2, zero once the energy reaches zero
    HeuristicPgd { theta: f64 },
    /// user-supplied constant
    Constant { gamma: f64 },
}

/// A step-size rule together with its running state.
#[derive(Debug, Clone)]
pub struct StepSizeRule {
    rule: StepRule,
    running_l: f64,
}

fn norm_inf(g: &Array2<f64>) -> f64 {
    g.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn norm_fro(g: &Array2<f64>) -> f64 {
    g.iter().map(|v| v * v).sum::<f64>().sqrt()
}

impl StepSizeRule {
    pub fn new(rule: StepRule) -> Self {
        Self { rule, running_l: 0.0 }
    }

    pub fn running_l(&self) -> f64 {
        self.running_l
    }

    /// Step size for iteration k given the current gradient and energy.
    pub fn next_gamma(&mut self, k: usize, g: &Array2<f64>, energy: f64) -> f64 {
        let n = g.nrows() as f64;
        match self.rule {
            StepRule::FixedMd { n_iters } => {
                self.running_l = self.running_l.max(norm_inf(g));
                (2.0 * n.ln()).sqrt() * self.running_l / ((n_iters + 1) as f64).sqrt()
            }
            StepRule::FixedPgd { n_iters } => {
                self.running_l = self.running_l.max(norm_fro(g));
                2.0f64.sqrt() * self.running_l / ((n_iters + 1) as f64).sqrt()
            }
            StepRule::DynamicMd => {
                let norm = norm_inf(g);
                if norm == 0.0 {
                    0.0
                } else {
                    2.0f64.sqrt() / (norm * ((k + 1) as f64).sqrt())
                }
            }
            StepRule::DynamicPgd => {
                let norm = norm_fro(g);
                if norm == 0.0 {
                    0.0
                } else {
                    2.0f64.sqrt() / (norm * ((k + 1) as f64).sqrt())
                }
            }
            StepRule::HeuristicPgd { theta } => {
                if energy == 0.0 {
                    0.0
                } else {
                    let norm = norm_fro(g);
                    theta * norm * norm / (energy * energy)
                }
            }
            StepRule::Constant { gamma } => gamma,
        }
    }
}

/// Which update drives the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateKind {
    Entropic,
    Projected,
}

/// Trajectory summary: the best-energy iterate (the initial point included),
/// plus per-iteration energies and step sizes.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub x_best: SimplexMatrix,
    pub energy_best: f64,
    /// energies of X^(0) .. X^(N)
    pub energies: Vec<f64>,
    /// step sizes gamma_0 .. gamma_{N-1}
    pub gammas: Vec<f64>,
    pub iterations_run: usize,
}

/// Core loop shared by both pipelines. `observer` sees every iterate
/// (including the initial point) and is used for property tracking.
pub fn run_solver_with(
    ctx: &EnergyContext,
    n_iters: usize,
    mut rule: StepSizeRule,
    update: UpdateKind,
    mut observer: impl FnMut(usize, &SimplexMatrix),
) -> Result<SolveReport> {
    if n_iters == 0 {
        return Err(Error::InvalidParameter("iteration count must be >= 1".into()));
    }
    let mut x = SimplexMatrix::barycenter(ctx.n())?;
    let mut energy = ctx.energy(x.as_array())?;
    let mut x_best = x.clone();
    let mut energy_best = energy;
    let mut energies = vec![energy];
    let mut gammas = Vec::with_capacity(n_iters);
    observer(0, &x);
    for k in 0..n_iters {
        let g = ctx.gradient(x.as_array())?;
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("gradient at iteration {k}")));
        }
        let gamma = rule.next_gamma(k, &g, energy);
        x = match update {
            UpdateKind::Entropic => emd_step(&x, &g, gamma)?,
            UpdateKind::Projected => pgd_step(&x, &g, gamma)?,
        };
        energy = ctx.energy(x.as_array())?;
        energies.push(energy);
        gammas.push(gamma);
        if energy < energy_best {
            energy_best = energy;
            x_best = x.clone();
        }
        observer(k + 1, &x);
    }
    Ok(SolveReport { x_best, energy_best, energies, gammas, iterations_run: n_iters })
}

/// Entropic mirror descent pipeline from the barycenter.
pub fn run_emdgm(ctx: &EnergyContext, n_iters: usize, rule: StepSizeRule) -> Result<SolveReport> {
    run_solver_with(ctx, n_iters, rule, UpdateKind::Entropic, |_, _| {})
}

/// Projected gradient pipeline from the barycenter.
pub fn run_pgdgm(ctx: &EnergyContext, n_iters: usize, rule: StepSizeRule) -> Result<SolveReport> {
    run_solver_with(ctx, n_iters, rule, UpdateKind::Projected, |_, _| {})
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_models::sample_goe;
    use crate::seed::rng_from;
    use crate::types::SymMatrix;
    use ndarray::array;
    use rand::Rng;

    #[test]
    fn projection_is_identity_on_simplex_points() {
        let x = SimplexMatrix::barycenter(3).unwrap();
        let p = project_simplex(x.as_array()).unwrap();
        for (a, b) in p.as_array().iter().zip(x.as_array().iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn projection_hand_case() {
        let y = array![[0.9, 0.9], [-1.0, -1.0]];
        let p = project_simplex(&y).unwrap();
        let expect = array![[0.5, 0.5], [0.0, 0.0]];
        for (a, b) in p.as_array().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn projection_ignores_constant_shifts() {
        let mut rng = rng_from(51);
        for _ in 0..50 {
            let y = Array2::from_shape_fn((3, 3), |_| rng.gen::<f64>() * 4.0 - 2.0);
            let c = rng.gen::<f64>() * 10.0 - 5.0;
            let p0 = project_simplex(&y).unwrap();
            let p1 = project_simplex(&(&y + c)).unwrap();
            for (a, b) in p0.as_array().iter().zip(p1.as_array().iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn projection_matches_kkt_oracle() {
        let mut rng = rng_from(52);
        for _ in 0..200 {
            let y = Array2::from_shape_fn((3, 3), |_| rng.gen::<f64>() * 4.0 - 2.0);
            let p = project_simplex(&y).unwrap();
            let o = oracle::project_kkt(&y);
            for (a, b) in p.as_array().iter().zip(o.iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn projection_idempotent_and_nonexpansive() {
        let mut rng = rng_from(53);
        for _ in 0..100 {
            let y1 = Array2::from_shape_fn((4, 4), |_| rng.gen::<f64>() * 4.0 - 2.0);
            let y2 = Array2::from_shape_fn((4, 4), |_| rng.gen::<f64>() * 4.0 - 2.0);
            let p1 = project_simplex(&y1).unwrap();
            let p2 = project_simplex(&y2).unwrap();
            let twice = project_simplex(p1.as_array()).unwrap();
            for (a, b) in twice.as_array().iter().zip(p1.as_array().iter()) {
                assert!((a - b).abs() < 1e-12);
            }
            let d_out: f64 = (p1.as_array() - p2.as_array()).iter().map(|v| v * v).sum();
            let d_in: f64 = (&y1 - &y2).iter().map(|v| v * v).sum();
            assert!(d_out.sqrt() <= d_in.sqrt() + 1e-12);
        }
    }

    #[test]
    fn emd_step_zero_gamma_is_identity() {
        let x = SimplexMatrix::barycenter(3).unwrap();
        let g = Array2::from_shape_fn((3, 3), |(i, j)| (i + 2 * j) as f64);
        let out = emd_step(&x, &g, 0.0).unwrap();
        assert_eq!(out.as_array(), x.as_array());
    }

    #[test]
    fn emd_step_hand_case() {
        let x = SimplexMatrix::barycenter(2).unwrap();
        let g = array![[0.0, 1.0], [1.0, 0.0]];
        let out = emd_step(&x, &g, 3.0f64.ln()).unwrap();
        let expect = array![[3.0 / 8.0, 1.0 / 8.0], [1.0 / 8.0, 3.0 / 8.0]];
        for (a, b) in out.as_array().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn emd_shift_and_scale_invariances() {
        let mut rng = rng_from(54);
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            let x = {
                let raw = Array2::from_shape_fn((n, n), |_| rng.gen::<f64>() + 0.01);
                let s = raw.sum();
                SimplexMatrix::new(raw / s).unwrap()
            };
            let g = Array2::from_shape_fn((n, n), |_| rng.gen::<f64>() * 4.0 - 2.0);
            let gamma = rng.gen::<f64>() * 2.0;
            let c = rng.gen::<f64>() * 10.0 - 5.0;
            let shifted = emd_step(&x, &g.mapv(|v| v + c), gamma).unwrap();
            let base = emd_step(&x, &g, gamma).unwrap();
            for (a, b) in shifted.as_array().iter().zip(base.as_array().iter()) {
                assert!((a - b).abs() < 1e-12);
            }
            // scaling the gradient equals scaling the step
            let t = rng.gen::<f64>() * 3.0 + 0.1;
            let lhs = emd_step(&x, &g.mapv(|v| t * v), gamma).unwrap();
            let rhs = emd_step(&x, &g, t * gamma).unwrap();
            for (a, b) in lhs.as_array().iter().zip(rhs.as_array().iter()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pgd_step_composes_projection() {
        let x = SimplexMatrix::barycenter(2).unwrap();
        assert_eq!(pgd_step(&x, &Array2::zeros((2, 2)), 0.7).unwrap().as_array(), x.as_array());
        // chain the projection hand case: X - gamma G = [[0.9,0.9],[-1,-1]]
        let g = array![[-0.65, -0.65], [1.25, 1.25]];
        let out = pgd_step(&x, &g, 1.0).unwrap();
        let expect = array![[0.5, 0.5], [0.0, 0.0]];
        for (a, b) in out.as_array().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn step_rules_plug_in_values() {
        let g = array![[2.0f64.sqrt(), 0.0], [0.0, 0.0]];
        let mut dyn_md = StepSizeRule::new(StepRule::DynamicMd);
        assert!((dyn_md.next_gamma(1, &g, 1.0) - 1.0 / 2.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(dyn_md.next_gamma(0, &Array2::zeros((2, 2)), 1.0), 0.0);

        let g2 = array![[2.0, 0.0], [0.0, 0.0]];
        let mut heuristic = StepSizeRule::new(StepRule::HeuristicPgd { theta: 1.0 });
        assert!((heuristic.next_gamma(0, &g2, 4.0) - 0.25).abs() < 1e-15);
        assert_eq!(heuristic.next_gamma(0, &g2, 0.0), 0.0);

        let mut fixed = StepSizeRule::new(StepRule::FixedMd { n_iters: 1 });
        let gamma = fixed.next_gamma(0, &g2, 1.0);
        let n = 2.0f64;
        assert!((gamma - (2.0 * n.ln()).sqrt() * 2.0 / 2.0f64.sqrt()).abs() < 1e-14);
        assert_eq!(fixed.running_l(), 2.0);
    }

    #[test]
    fn zero_inputs_are_a_fixed_point() {
        let zero = SymMatrix::zeros(4);
        let ctx = EnergyContext::new(&zero, &zero).unwrap();
        for update in [UpdateKind::Entropic, UpdateKind::Projected] {
            let report = run_solver_with(
                &ctx,
                5,
                StepSizeRule::new(StepRule::DynamicMd),
                update,
                |_, x| {
                    let bary = 1.0 / 16.0;
                    assert!(x.as_array().iter().all(|&v| (v - bary).abs() < 1e-14));
                },
            )
            .unwrap();
            assert_eq!(report.energy_best, 0.0);
            assert_eq!(report.energies.len(), 6);
        }
    }

    #[test]
    fn iterates_stay_on_simplex_and_positive() {
        let a = sample_goe(12, 61).unwrap();
        let b = sample_goe(12, 62).unwrap();
        let ctx = EnergyContext::new(&a, &b).unwrap();
        let report = run_solver_with(
            &ctx,
            20,
            StepSizeRule::new(StepRule::DynamicMd),
            UpdateKind::Entropic,
            |_, x| {
                assert!((x.as_array().sum() - 1.0).abs() < 1e-10);
                // entropic iterates from the barycenter stay strictly positive
                assert!(x.as_array().iter().all(|&v| v > 0.0));
            },
        )
        .unwrap();
        assert!(report.energy_best <= report.energies[0]);
    }

    #[test]
    fn pgd_iterates_stay_on_simplex() {
        let a = sample_goe(10, 63).unwrap();
        let b = sample_goe(10, 64).unwrap();
        let ctx = EnergyContext::new(&a, &b).unwrap();
        let report = run_solver_with(
            &ctx,
            20,
            StepSizeRule::new(StepRule::HeuristicPgd { theta: 1.0 }),
            UpdateKind::Projected,
            |_, x| {
                assert!((x.as_array().sum() - 1.0).abs() < 1e-10);
                assert!(x.as_array().iter().all(|&v| v >= 0.0));
            },
        )
        .unwrap();
        assert!(report.energy_best <= report.energies[0]);
    }

    #[test]
    fn single_pgd_step_matches_hand_composition() {
        // n=2 contexts where one heuristic step reproduces pgd_step directly
        let a = SymMatrix::new(array![[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let b = SymMatrix::zeros(2);
        let ctx = EnergyContext::new(&a, &b).unwrap();
        let x0 = SimplexMatrix::barycenter(2).unwrap();
        let g = ctx.gradient(x0.as_array()).unwrap();
        let e = ctx.energy(x0.as_array()).unwrap();
        let mut rule = StepSizeRule::new(StepRule::HeuristicPgd { theta: 1.0 });
        let gamma = rule.next_gamma(0, &g, e);
        let expect = pgd_step(&x0, &g, gamma).unwrap();
        let report = run_pgdgm(&ctx, 1, StepSizeRule::new(StepRule::HeuristicPgd { theta: 1.0 }))
            .unwrap();
        // X^(1) is the last recorded iterate; compare through energies
        assert!((report.energies[1] - ctx.energy(expect.as_array()).unwrap()).abs() < 1e-14);
    }
}
