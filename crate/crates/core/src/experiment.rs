//! Monte-Carlo experiment orchestration: sweeps over models, algorithms and
//! noise grids, with CSV and SVG emission.
//!
//! Seeds are derived per (noise index, trial) and never shared, so adding an
//! algorithm to a config does not perturb the model draws, and results do not
//! depend on thread scheduling.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use ndarray::Array2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{
    count_nondominant_rows, count_suffcond_failures, property_report, SuffCondVariant,
};
use crate::error::{Error, Result};
use crate::graph_models::{
    load_edge_list, sample_cer, sample_cgw, sample_permutation, standardize_cer,
    subsample_pair, ModelKind,
};
use crate::qap::EnergyContext;
use crate::rounding::{gmwm, overlap};
use crate::seed::derive;
use crate::solvers::{run_solver_with, StepRule, StepSizeRule, UpdateKind};
use crate::spectral::{grampa_similarity, umeyama_similarity};
use crate::types::{Permutation, SymMatrix};

/// Algorithm selector for a sweep entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgoKind {
    Emd,
    Pgd,
    Grampa,
    Umeyama,
}

impl AlgoKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgoKind::Emd => "emd",
            AlgoKind::Pgd => "pgd",
            AlgoKind::Grampa => "grampa",
            AlgoKind::Umeyama => "umeyama",
        }
    }
}

/// Step-size selector, parsed from strings like "fixed", "dynamic",
/// "heuristic:0.5" or "const:1.25".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StepSpec {
    Fixed,
    Dynamic,
    Heuristic { theta: f64 },
    Constant { gamma: f64 },
}

impl TryFrom<String> for StepSpec {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        match s.as_str() {
            "fixed" => Ok(StepSpec::Fixed),
            "dynamic" => Ok(StepSpec::Dynamic),
            other => {
                if let Some(v) = other.strip_prefix("heuristic:") {
                    let theta: f64 =
                        v.parse().map_err(|e| format!("bad theta {v:?}: {e}"))?;
                    return Ok(StepSpec::Heuristic { theta });
                }
                if let Some(v) = other.strip_prefix("const:") {
                    let gamma: f64 =
                        v.parse().map_err(|e| format!("bad gamma {v:?}: {e}"))?;
                    return Ok(StepSpec::Constant { gamma });
                }
                Err(format!("unknown step rule {other:?}"))
            }
        }
    }
}

impl From<StepSpec> for String {
    fn from(s: StepSpec) -> String {
        match s {
            StepSpec::Fixed => "fixed".into(),
            StepSpec::Dynamic => "dynamic".into(),
            StepSpec::Heuristic { theta } => format!("heuristic:{theta}"),
            StepSpec::Constant { gamma } => format!("const:{gamma}"),
        }
    }
}

impl StepSpec {
    /// Resolves the spec into a concrete rule for one algorithm run.
    pub fn to_rule(&self, algo: AlgoKind, iters: usize) -> Result<StepSizeRule> {
        let rule = match (self, algo) {
            (StepSpec::Fixed, AlgoKind::Emd) => StepRule::FixedMd { n_iters: iters },
            (StepSpec::Fixed, AlgoKind::Pgd) => StepRule::FixedPgd { n_iters: iters },
            (StepSpec::Dynamic, AlgoKind::Emd) => StepRule::DynamicMd,
            (StepSpec::Dynamic, AlgoKind::Pgd) => StepRule::DynamicPgd,
            (StepSpec::Heuristic { theta }, AlgoKind::Pgd) => {
                StepRule::HeuristicPgd { theta: *theta }
            }
            (StepSpec::Heuristic { .. }, AlgoKind::Emd) => {
                return Err(Error::InvalidParameter(
                    "no heuristic step rule exists for the entropic update".into(),
                ))
            }
            (StepSpec::Constant { gamma }, _) => StepRule::Constant { gamma: *gamma },
            (_, AlgoKind::Grampa | AlgoKind::Umeyama) => {
                return Err(Error::InvalidParameter(
                    "spectral methods take no step rule".into(),
                ))
            }
        };
        Ok(StepSizeRule::new(rule))
    }
}

/// One algorithm entry of a sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmConfig {
    pub algo: AlgoKind,
    #[serde(default = "default_iters")]
    pub iters: usize,
    #[serde(default = "default_step")]
    pub step: StepSpec,
    #[serde(default = "default_eta")]
    pub eta: f64,
}

fn default_iters() -> usize {
    125
}

fn default_step() -> StepSpec {
    StepSpec::Dynamic
}

fn default_eta() -> f64 {
    0.2
}

impl AlgorithmConfig {
    fn label(&self) -> String {
        self.algo.name().to_string()
    }
}

/// Model block of a sweep config. The noise grid is interpreted as sigma for
/// the generative models and as the retention probability for subsampling.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub kind: ModelKind,
    #[serde(default)]
    pub n: usize,
    #[serde(default = "default_p")]
    pub p: f64,
    /// parent edge list, required for subsampling
    #[serde(default)]
    pub edge_list: Option<PathBuf>,
    /// standardize CER inputs before solving
    #[serde(default = "default_true")]
    pub standardize: bool,
}

fn default_p() -> f64 {
    0.5
}

fn default_true() -> bool {
    true
}

/// Full sweep description, read from a single JSON document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    pub sigma_grid: Vec<f64>,
    pub algorithms: Vec<AlgorithmConfig>,
    pub trials: usize,
    pub base_seed: u64,
    #[serde(default)]
    pub outputs: Option<PathBuf>,
    #[serde(default)]
    pub track_properties: bool,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be >= 1".into()));
        }
        if self.sigma_grid.is_empty() {
            return Err(Error::InvalidParameter("sigma_grid must be nonempty".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidParameter("algorithms must be nonempty".into()));
        }
        if self.model.kind == ModelKind::Subsample && self.model.edge_list.is_none() {
            return Err(Error::InvalidParameter(
                "subsample model needs an edge_list path".into(),
            ));
        }
        if self.model.kind != ModelKind::Subsample && self.model.n == 0 {
            return Err(Error::InvalidParameter("model n must be >= 1".into()));
        }
        for algo in &self.algorithms {
            match algo.algo {
                AlgoKind::Emd | AlgoKind::Pgd => {
                    if algo.iters == 0 {
                        return Err(Error::InvalidParameter("iters must be >= 1".into()));
                    }
                    algo.step.to_rule(algo.algo, algo.iters)?;
                }
                AlgoKind::Grampa | AlgoKind::Umeyama => {}
            }
        }
        Ok(())
    }
}

/// One completed run. `status` is "ok" or the error text when a solver
/// failed; failed rows keep zeroed metrics so the sweep can continue.
#[derive(Debug, Clone, Serialize)]
pub struct RunRecord {
    pub model: String,
    pub sigma: f64,
    pub algo: String,
    pub trial: usize,
    pub seed: u64,
    pub overlap: f64,
    pub energy_best: f64,
    pub runtime_seconds: f64,
    pub metric1: usize,
    pub metric2: usize,
    pub iterations: usize,
    pub status: String,
}

struct PreparedInputs {
    a: SymMatrix,
    b: SymMatrix,
    truth: Permutation,
}

fn prepare_inputs(
    cfg: &ExperimentConfig,
    parent: Option<&SymMatrix>,
    noise: f64,
    sigma_index: usize,
    trial: usize,
) -> Result<PreparedInputs> {
    let model_seed = derive(cfg.base_seed, &[1, sigma_index as u64, trial as u64]);
    let perm_seed = derive(cfg.base_seed, &[2, sigma_index as u64, trial as u64]);
    match cfg.model.kind {
        ModelKind::Cgw => {
            let truth = sample_permutation(cfg.model.n, perm_seed)?;
            let (a, b) = sample_cgw(cfg.model.n, noise, &truth, model_seed)?;
            Ok(PreparedInputs { a, b, truth })
        }
        ModelKind::Cer => {
            let truth = sample_permutation(cfg.model.n, perm_seed)?;
            let (a, b) = sample_cer(cfg.model.n, noise, cfg.model.p, &truth, model_seed)?;
            if cfg.model.standardize {
                Ok(PreparedInputs {
                    a: standardize_cer(&a, cfg.model.p)?,
                    b: standardize_cer(&b, cfg.model.p)?,
                    truth,
                })
            } else {
                Ok(PreparedInputs { a, b, truth })
            }
        }
        ModelKind::Subsample => {
            let h = parent.expect("parent graph loaded for subsample runs");
            let truth = sample_permutation(h.n(), perm_seed)?;
            let (a, b) = subsample_pair(h, noise, model_seed)?;
            Ok(PreparedInputs { a, b: b.conjugate(&truth), truth })
        }
    }
}

fn similarity_for(algo: &AlgorithmConfig, inputs: &PreparedInputs) -> Result<(Array2<f64>, usize, f64)> {
    match algo.algo {
        AlgoKind::Emd | AlgoKind::Pgd => {
            let ctx = EnergyContext::new(&inputs.a, &inputs.b)?;
            let update = if algo.algo == AlgoKind::Emd {
                UpdateKind::Entropic
            } else {
                UpdateKind::Projected
            };
            let rule = algo.step.to_rule(algo.algo, algo.iters)?;
            let report = run_solver_with(&ctx, algo.iters, rule, update, |_, _| {})?;
            Ok((report.x_best.into_array(), report.iterations_run, report.energy_best))
        }
        AlgoKind::Grampa => {
            let sim = grampa_similarity(&inputs.a, &inputs.b, algo.eta)?;
            let ctx = EnergyContext::new(&inputs.a, &inputs.b)?;
            let energy = ctx.energy(&sim)?;
            Ok((sim, 0, energy))
        }
        AlgoKind::Umeyama => {
            let sim = umeyama_similarity(&inputs.a, &inputs.b)?;
            let ctx = EnergyContext::new(&inputs.a, &inputs.b)?;
            let energy = ctx.energy(&sim)?;
            Ok((sim, 0, energy))
        }
    }
}

fn align_to_truth(x: &Array2<f64>, truth: &Permutation) -> Array2<f64> {
    Array2::from_shape_fn(x.dim(), |(i, j)| x[[i, truth.map(j)]])
}

/// Runs the full sweep. Records come back sorted by
/// (noise index, algorithm index, trial).
pub fn run_benchmark(cfg: &ExperimentConfig) -> Result<Vec<RunRecord>> {
    cfg.validate()?;
    let parent = match (&cfg.model.kind, &cfg.model.edge_list) {
        (ModelKind::Subsample, Some(path)) => Some(load_edge_list(path, None)?),
        _ => None,
    };
    let model_name = format!("{:?}", cfg.model.kind).to_uppercase();
    let mut jobs = Vec::new();
    for si in 0..cfg.sigma_grid.len() {
        for ai in 0..cfg.algorithms.len() {
            for t in 0..cfg.trials {
                jobs.push((si, ai, t));
            }
        }
    }
    let mut records: Vec<((usize, usize, usize), RunRecord)> = jobs
        .par_iter()
        .map(|&(si, ai, t)| {
            let noise = cfg.sigma_grid[si];
            let algo = &cfg.algorithms[ai];
            let seed = derive(cfg.base_seed, &[1, si as u64, t as u64]);
            let start = Instant::now();
            let outcome = prepare_inputs(cfg, parent.as_ref(), noise, si, t)
                .and_then(|inputs| {
                    let (sim, iters, energy) = similarity_for(algo, &inputs)?;
                    let p_hat = gmwm(&sim)?;
                    let ov = overlap(&p_hat, &inputs.truth)?;
                    let aligned = align_to_truth(&sim, &inputs.truth);
                    let metric1 = count_nondominant_rows(&aligned)?;
                    let metric2 = count_suffcond_failures(&aligned, SuffCondVariant::Max)?;
                    Ok((ov, energy, iters, metric1, metric2))
                });
            let runtime = start.elapsed().as_secs_f64();
            let record = match outcome {
                Ok((ov, energy, iters, metric1, metric2)) => RunRecord {
                    model: model_name.clone(),
                    sigma: noise,
                    algo: algo.label(),
                    trial: t,
                    seed,
                    overlap: ov,
                    energy_best: energy,
                    runtime_seconds: runtime,
                    metric1,
                    metric2,
                    iterations: iters,
                    status: "ok".into(),
                },
                Err(e) => RunRecord {
                    model: model_name.clone(),
                    sigma: noise,
                    algo: algo.label(),
                    trial: t,
                    seed,
                    overlap: 0.0,
                    energy_best: 0.0,
                    runtime_seconds: runtime,
                    metric1: 0,
                    metric2: 0,
                    iterations: 0,
                    status: format!("error: {e}"),
                },
            };
            ((si, ai, t), record)
        })
        .collect();
    records.sort_by_key(|(key, _)| *key);
    Ok(records.into_iter().map(|(_, r)| r).collect())
}

/// One property-tracking row; `trial` is None on averaged rows.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyRow {
    pub sigma: f64,
    pub trial: Option<usize>,
    pub k: usize,
    pub frac_suffcond_max: f64,
    pub frac_suffcond_sum: f64,
    pub frac_suffcond_summax: f64,
    pub frac_diag_dominant_rows: f64,
    pub overlap_after_rounding: f64,
}

/// Tracks the four property fractions and the rounded overlap at every
/// solver iteration. Requires a single iterative algorithm in the config.
pub fn run_property_tracking(cfg: &ExperimentConfig) -> Result<Vec<PropertyRow>> {
    cfg.validate()?;
    if !cfg.track_properties {
        return Err(Error::InvalidParameter("track_properties is not set".into()));
    }
    if cfg.algorithms.len() != 1 {
        return Err(Error::InvalidParameter(
            "property tracking requires exactly one algorithm".into(),
        ));
    }
    let algo = cfg.algorithms[0].clone();
    let update = match algo.algo {
        AlgoKind::Emd => UpdateKind::Entropic,
        AlgoKind::Pgd => UpdateKind::Projected,
        _ => {
            return Err(Error::InvalidParameter(
                "property tracking requires an iterative algorithm".into(),
            ))
        }
    };
    let mut rows = Vec::new();
    for (si, &noise) in cfg.sigma_grid.iter().enumerate() {
        let mut trial_rows: Vec<Vec<PropertyRow>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| -> Result<Vec<PropertyRow>> {
                let inputs = prepare_inputs(cfg, None, noise, si, t)?;
                let ctx = EnergyContext::new(&inputs.a, &inputs.b)?;
                let rule = algo.step.to_rule(algo.algo, algo.iters)?;
                let mut out = Vec::with_capacity(algo.iters + 1);
                let mut observer_err = None;
                run_solver_with(&ctx, algo.iters, rule, update, |k, x| {
                    match property_report(x.as_array(), &inputs.truth) {
                        Ok(r) => out.push(PropertyRow {
                            sigma: noise,
                            trial: Some(t),
                            k,
                            frac_suffcond_max: r.frac_suffcond_max,
                            frac_suffcond_sum: r.frac_suffcond_sum,
                            frac_suffcond_summax: r.frac_suffcond_summax,
                            frac_diag_dominant_rows: r.frac_diag_dominant_rows,
                            overlap_after_rounding: r.overlap_after_rounding,
                        }),
                        Err(e) => observer_err = Some(e),
                    }
                })?;
                if let Some(e) = observer_err {
                    return Err(e);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        // averaged rows per iteration, appended after the per-trial rows
        let iters = trial_rows.first().map_or(0, |r| r.len());
        let mut means = Vec::with_capacity(iters);
        for k in 0..iters {
            let m = cfg.trials as f64;
            let avg = |f: fn(&PropertyRow) -> f64| {
                trial_rows.iter().map(|rows| f(&rows[k])).sum::<f64>() / m
            };
            means.push(PropertyRow {
                sigma: noise,
                trial: None,
                k,
                frac_suffcond_max: avg(|r| r.frac_suffcond_max),
                frac_suffcond_sum: avg(|r| r.frac_suffcond_sum),
                frac_suffcond_summax: avg(|r| r.frac_suffcond_summax),
                frac_diag_dominant_rows: avg(|r| r.frac_diag_dominant_rows),
                overlap_after_rounding: avg(|r| r.overlap_after_rounding),
            });
        }
        for tr in trial_rows.drain(..) {
            rows.extend(tr);
        }
        rows.extend(means);
    }
    Ok(rows)
}

const RUNS_HEADER: &str =
    "model,sigma,algo,trial,seed,overlap,energy_best,runtime_seconds,metric1,metric2,iterations,status";

/// Writes runs.csv, summary.csv and recovery.svg into `dir`.
pub fn write_outputs(records: &[RunRecord], dir: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidParameter("no records to write".into()));
    }
    std::fs::create_dir_all(dir)?;
    let mut runs = std::io::BufWriter::new(std::fs::File::create(dir.join("runs.csv"))?);
    writeln!(runs, "{RUNS_HEADER}")?;
    for r in records {
        writeln!(
            runs,
            "{},{},{},{},{},{},{},{:.6},{},{},{},{}",
            r.model,
            r.sigma,
            r.algo,
            r.trial,
            r.seed,
            r.overlap,
            r.energy_best,
            r.runtime_seconds,
            r.metric1,
            r.metric2,
            r.iterations,
            r.status
        )?;
    }
    runs.flush()?;

    let summary = summarize(records);
    let mut f = std::io::BufWriter::new(std::fs::File::create(dir.join("summary.csv"))?);
    writeln!(f, "sigma,algo,trials,mean_overlap,std_overlap,mean_energy_best")?;
    for row in &summary {
        writeln!(
            f,
            "{},{},{},{},{},{}",
            row.sigma, row.algo, row.trials, row.mean_overlap, row.std_overlap, row.mean_energy
        )?;
    }
    f.flush()?;

    std::fs::write(dir.join("recovery.svg"), recovery_svg(&summary))?;
    Ok(())
}

/// Mean/std per (sigma, algo) cell, in first-appearance order.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub sigma: f64,
    pub algo: String,
    pub trials: usize,
    pub mean_overlap: f64,
    pub std_overlap: f64,
    pub mean_energy: f64,
}

pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    let mut order: Vec<(f64, String)> = Vec::new();
    for r in records {
        if !order.iter().any(|(s, a)| *s == r.sigma && *a == r.algo) {
            order.push((r.sigma, r.algo.clone()));
        }
    }
    order
        .into_iter()
        .map(|(sigma, algo)| {
            let cell: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.sigma == sigma && r.algo == algo && r.status == "ok")
                .collect();
            let m = cell.len().max(1) as f64;
            let mean = cell.iter().map(|r| r.overlap).sum::<f64>() / m;
            let var = cell.iter().map(|r| (r.overlap - mean).powi(2)).sum::<f64>() / m;
            let mean_energy = cell.iter().map(|r| r.energy_best).sum::<f64>() / m;
            SummaryRow {
                sigma,
                algo,
                trials: cell.len(),
                mean_overlap: mean,
                std_overlap: var.sqrt(),
                mean_energy,
            }
        })
        .collect()
}

const SVG_COLORS: &[&str] = &["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

/// Minimal recovery plot: one polyline of mean overlap against the noise
/// grid per algorithm.
fn recovery_svg(summary: &[SummaryRow]) -> String {
    let (w, h) = (640.0, 480.0);
    let (ml, mr, mt, mb) = (60.0, 20.0, 20.0, 50.0);
    let sigmas: Vec<f64> = {
        let mut v: Vec<f64> = summary.iter().map(|r| r.sigma).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v.dedup();
        v
    };
    let (smin, smax) = (
        sigmas.first().copied().unwrap_or(0.0),
        sigmas.last().copied().unwrap_or(1.0),
    );
    let span = if smax > smin { smax - smin } else { 1.0 };
    let x_of = |s: f64| ml + (s - smin) / span * (w - ml - mr);
    let y_of = |v: f64| h - mb - v * (h - mt - mb);
    let mut algos: Vec<String> = Vec::new();
    for r in summary {
        if !algos.contains(&r.algo) {
            algos.push(r.algo.clone());
        }
    }
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        h - mb,
        w - mr,
        h - mb
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        h - mb
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"14\">noise</text>\n",
        (w - ml) / 2.0,
        h - 12.0
    ));
    svg.push_str(&format!(
        "<text x=\"14\" y=\"{}\" font-size=\"14\" transform=\"rotate(-90 14 {})\">mean overlap</text>\n",
        h / 2.0,
        h / 2.0
    ));
    for (idx, algo) in algos.iter().enumerate() {
        let color = SVG_COLORS[idx % SVG_COLORS.len()];
        let mut points: Vec<(f64, f64)> = summary
            .iter()
            .filter(|r| &r.algo == algo)
            .map(|r| (r.sigma, r.mean_overlap))
            .collect();
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let path: Vec<String> = points
            .iter()
            .map(|&(s, v)| format!("{},{}", x_of(s), y_of(v)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n",
            path.join(" ")
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"13\" fill=\"{color}\">{algo}</text>\n",
            w - mr - 90.0,
            mt + 18.0 * (idx + 1) as f64
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Writes the property-tracking table as CSV.
pub fn write_property_rows(rows: &[PropertyRow], path: &Path) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(
        f,
        "sigma,trial,k,frac_suffcond_max,frac_suffcond_sum,frac_suffcond_summax,\
         frac_diag_dominant_rows,overlap_after_rounding"
    )?;
    for r in rows {
        let trial = r.trial.map_or_else(|| "mean".to_string(), |t| t.to_string());
        writeln!(
            f,
            "{},{},{},{},{},{},{},{}",
            r.sigma,
            trial,
            r.k,
            r.frac_suffcond_max,
            r.frac_suffcond_sum,
            r.frac_suffcond_summax,
            r.frac_diag_dominant_rows,
            r.overlap_after_rounding
        )?;
    }
    f.flush()?;
    Ok(())
}
