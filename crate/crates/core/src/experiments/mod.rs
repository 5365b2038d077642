//! Monte Carlo sweeps over `(n, r, p)`: trial execution, per-point
//! aggregation, threshold crossings and CSV / JSON output.

mod formula;
mod output;
mod stats;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use formula::{formula_ratio, formula_value, literal_clique_regime};
pub use output::{write_csv, write_summary_json, CSV_HEADER, CSV_SCHEMA_VERSION, SUMMARY_SCHEMA_VERSION};
pub use stats::{crossing, isotonic, mean_stderr, wilson, Proportion};

use crate::error::{Error, Result};
use crate::generator::{generate, GnrpInstance, ModelParams};
use crate::graph::{components, degree_report, diameter_bounded};
use crate::hamilton::{hamilton_constructive, verify_hamilton, HamOptions, HamStage, SpliceMode};
use crate::par;
use crate::rng::{derive, derive_indexed, Stream};
use crate::solvers::{
    alpha_lower_cells, alpha_upper_cellsum, chromatic_sandwich, clique_block_scan, clique_lower_dense_cell,
    BudgetPolicy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Degree,
    Connectivity,
    Clique,
    Ham,
    Alpha,
    Chi,
    Diam,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Degree,
        Theorem::Connectivity,
        Theorem::Clique,
        Theorem::Ham,
        Theorem::Alpha,
        Theorem::Chi,
        Theorem::Diam,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::Degree => "degree",
            Theorem::Connectivity => "connectivity",
            Theorem::Clique => "clique",
            Theorem::Ham => "ham",
            Theorem::Alpha => "alpha",
            Theorem::Chi => "chi",
            Theorem::Diam => "diam",
        }
    }

    /// The 0/1 quantity whose mean is the point's success fraction.
    pub fn indicator(self) -> Option<Quantity> {
        match self {
            Theorem::Degree => Some(Quantity::WithinBand),
            Theorem::Connectivity | Theorem::Diam => Some(Quantity::Connected),
            Theorem::Ham => Some(Quantity::Hamiltonian),
            Theorem::Alpha | Theorem::Chi => Some(Quantity::SandwichOk),
            Theorem::Clique => None,
        }
    }

    /// Grid parameterisation used when none is given.
    pub fn default_grid_kind(self) -> GridKind {
        match self {
            Theorem::Connectivity => GridKind::C,
            Theorem::Ham => GridKind::K,
            _ => GridKind::P,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "degree" => Theorem::Degree,
            "connectivity" | "conn" => Theorem::Connectivity,
            "clique" => Theorem::Clique,
            "ham" | "hamilton" | "hamiltonicity" => Theorem::Ham,
            "alpha" | "independence" => Theorem::Alpha,
            "chi" | "chromatic" => Theorem::Chi,
            "diam" | "diameter" => Theorem::Diam,
            _ => return Err(Error::InvalidParameter(format!("unknown theorem `{s}`"))),
        })
    }
}

/// How grid values map to `p`: `C` and `K` set `q = v ln n / n` and
/// `p = q / (π r²)`; `P` gives `p` directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridKind {
    C,
    K,
    P,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub kind: GridKind,
    pub values: Vec<f64>,
}

impl ParamGrid {
    pub fn new(kind: GridKind, values: Vec<f64>) -> Self {
        ParamGrid { kind, values }
    }

    /// `p` for grid value `v` (not clamped; may exceed 1).
    pub fn p_of(&self, n: usize, r: f64, v: f64) -> f64 {
        match self.kind {
            GridKind::P => v,
            GridKind::C | GridKind::K => {
                let nf = n as f64;
                v * nf.ln() / nf / (std::f64::consts::PI * r * r)
            }
        }
    }

    fn c_or_k(&self, v: f64) -> Option<f64> {
        (self.kind != GridKind::P).then_some(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub theorem: Theorem,
    pub n: usize,
    pub r: f64,
    pub grid: ParamGrid,
    pub trials: usize,
    pub master_seed: u64,
    /// Node budget for each exact search.
    pub budget: u64,
    pub ham_restarts: u32,
    pub ham_mode: SpliceMode,
    /// Channel-1 probability override for the Hamilton construction.
    pub p1: Option<f64>,
    /// Fill `wall_ms`; off by default so outputs stay byte-reproducible.
    pub wall_times: bool,
    /// Trials run concurrently per batch (0: all at once). Bounds memory
    /// on large instances.
    pub batch: usize,
}

impl SweepConfig {
    pub fn new(theorem: Theorem, n: usize, r: f64, grid: ParamGrid, trials: usize, master_seed: u64) -> Self {
        SweepConfig {
            theorem,
            n,
            r,
            grid,
            trials,
            master_seed,
            budget: crate::solvers::DEFAULT_BUDGET,
            ham_restarts: HamOptions::default().restarts,
            ham_mode: SpliceMode::Permissive,
            p1: None,
            wall_times: false,
            batch: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.grid.values.is_empty() {
            return Err(Error::InvalidParameter("parameter grid is empty".into()));
        }
        if let Some(v) = self.grid.values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidParameter(format!(
                "grid value {v} must be finite and >= 0"
            )));
        }
        ModelParams::new(self.n, self.r, 0.0, 0).map(|_| ())
    }

    /// `p` at grid point `point`, or the reason it is infeasible.
    pub fn point_p(&self, point: usize) -> std::result::Result<f64, String> {
        let v = self.grid.values[point];
        let p = self.grid.p_of(self.n, self.r, v);
        if p > 1.0 {
            Err(format!("p = {p} exceeds 1 at grid value {v}"))
        } else {
            Ok(p)
        }
    }
}

/// Seed of trial `trial` at grid point `point`.
pub fn trial_seed(master: u64, point: usize, trial: usize) -> u64 {
    derive_indexed(
        derive_indexed(master, Stream::Trial, point as u64),
        Stream::Trial,
        trial as u64,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    DegreeMin,
    DegreeMax,
    DegreeMean,
    Delta,
    WithinBand,
    Connected,
    Components,
    Isolated,
    Hamiltonian,
    /// 0 success, 1 empty cell, 2 cell cycle, 3 splice.
    FailureStage,
    EmptyCells,
    DegenerateCells,
    DpFallbacks,
    Clique,
    CliqueDenseLower,
    AlphaLower,
    AlphaUpper,
    /// 1 when every per-cell MIS in the upper bound finished within budget.
    AlphaUpperExact,
    ChiLower,
    ChiUpper,
    SandwichOk,
    Diameter,
    BfsRuns,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::DegreeMin => "degree_min",
            Quantity::DegreeMax => "degree_max",
            Quantity::DegreeMean => "degree_mean",
            Quantity::Delta => "delta",
            Quantity::WithinBand => "within_band",
            Quantity::Connected => "connected",
            Quantity::Components => "components",
            Quantity::Isolated => "isolated",
            Quantity::Hamiltonian => "hamiltonian",
            Quantity::FailureStage => "failure_stage",
            Quantity::EmptyCells => "empty_cells",
            Quantity::DegenerateCells => "degenerate_cells",
            Quantity::DpFallbacks => "dp_fallbacks",
            Quantity::Clique => "clique",
            Quantity::CliqueDenseLower => "clique_dense_lower",
            Quantity::AlphaLower => "alpha_lower",
            Quantity::AlphaUpper => "alpha_upper",
            Quantity::AlphaUpperExact => "alpha_upper_exact",
            Quantity::ChiLower => "chi_lower",
            Quantity::ChiUpper => "chi_upper",
            Quantity::SandwichOk => "sandwich_ok",
            Quantity::Diameter => "diameter",
            Quantity::BfsRuns => "bfs_runs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub quantity: Quantity,
    /// `None` when the quantity could not be computed (budget, disconnected).
    pub value: Option<f64>,
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub theorem: Theorem,
    pub point: usize,
    pub n: usize,
    pub r: f64,
    pub p: f64,
    pub c_or_k: Option<f64>,
    pub trial: usize,
    pub seed: u64,
    pub observations: Vec<Observation>,
    pub wall_ms: Option<f64>,
}

impl TrialRecord {
    pub fn value(&self, q: Quantity) -> Option<f64> {
        self.observations.iter().find(|o| o.quantity == q).and_then(|o| o.value)
    }

    pub fn ratio(&self, q: Quantity) -> Option<f64> {
        self.observations.iter().find(|o| o.quantity == q).and_then(|o| o.ratio)
    }
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

struct Measure<'a> {
    theorem: Theorem,
    params: &'a ModelParams,
    out: Vec<Observation>,
}

impl Measure<'_> {
    fn put(&mut self, quantity: Quantity, value: Option<f64>) {
        self.out.push(Observation {
            quantity,
            value,
            ratio: None,
        });
    }

    fn put_ratio(&mut self, quantity: Quantity, value: Option<f64>) {
        let p = self.params;
        let ratio = value.and_then(|v| formula_ratio(self.theorem, p.n, p.r, p.p, v).ok());
        self.out.push(Observation { quantity, value, ratio });
    }
}

/// Budget overruns become missing values; anything else is an error.
fn budgeted<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn measure(cfg: &SweepConfig, inst: &GnrpInstance) -> Result<Vec<Observation>> {
    let params = inst.params();
    let g = inst.graph();
    let mut m = Measure {
        theorem: cfg.theorem,
        params,
        out: Vec::new(),
    };
    match cfg.theorem {
        Theorem::Degree => {
            let rep = degree_report(g, params.q())?;
            m.put(Quantity::DegreeMin, Some(rep.min));
            m.put(Quantity::DegreeMax, Some(rep.max));
            m.put(Quantity::DegreeMean, Some(rep.mean));
            m.put(Quantity::Delta, Some(rep.delta));
            m.put(Quantity::WithinBand, Some(flag(rep.within_band)));
        }
        Theorem::Connectivity => {
            let comps = components(g);
            m.put(Quantity::Connected, Some(flag(comps.is_connected())));
            m.put(Quantity::Components, Some(comps.count as f64));
            m.put(Quantity::Isolated, Some(crate::graph::isolated_count(g) as f64));
        }
        Theorem::Ham => {
            let opts = HamOptions {
                restarts: cfg.ham_restarts,
                mode: cfg.ham_mode,
                seed: derive(params.seed, Stream::Hamilton),
                skip_empty: true,
            };
            let (ok, stage, stats) = match hamilton_constructive(inst, &opts) {
                Ok(cert) => (verify_hamilton(inst, &cert.order), 0.0, cert.stats),
                Err(f) => {
                    let stage = match f.stage {
                        HamStage::EmptyCell => 1.0,
                        HamStage::CellCycle => 2.0,
                        HamStage::Splice => 3.0,
                    };
                    (false, stage, f.stats)
                }
            };
            m.put(Quantity::Hamiltonian, Some(flag(ok)));
            m.put(Quantity::FailureStage, Some(stage));
            m.put(Quantity::EmptyCells, Some(stats.empty_cells as f64));
            m.put(Quantity::DegenerateCells, Some(stats.degenerate_cells as f64));
            m.put(Quantity::DpFallbacks, Some(stats.dp_fallbacks as f64));
        }
        Theorem::Clique => {
            let exact = budgeted(clique_block_scan(inst, cfg.budget))?;
            m.put_ratio(Quantity::Clique, exact.map(|c| c.size as f64));
            let lower = budgeted(clique_lower_dense_cell(inst, cfg.budget))?;
            m.put(Quantity::CliqueDenseLower, lower.map(|c| c.size as f64));
        }
        Theorem::Alpha => {
            let lower = alpha_lower_cells(inst, cfg.budget)?;
            let upper = alpha_upper_cellsum(inst, cfg.budget, BudgetPolicy::Substitute)?;
            let exact = upper.is_exact_computation();
            m.put_ratio(Quantity::AlphaLower, Some(lower.value as f64));
            m.put_ratio(Quantity::AlphaUpper, Some(upper.value as f64));
            m.put(Quantity::AlphaUpperExact, Some(flag(exact)));
            m.put(Quantity::SandwichOk, Some(flag(lower.value <= upper.value)));
        }
        Theorem::Chi => {
            let b = chromatic_sandwich(inst, cfg.budget)?;
            m.put_ratio(Quantity::ChiLower, Some(b.lower as f64));
            m.put_ratio(Quantity::ChiUpper, Some(b.upper as f64));
            m.put(Quantity::SandwichOk, Some(flag(b.lower <= b.upper)));
        }
        Theorem::Diam => {
            let run = match diameter_bounded(g) {
                Ok(run) => Some(run),
                Err(Error::Disconnected { .. }) => None,
                Err(e) => return Err(e),
            };
            m.put(Quantity::Connected, Some(flag(run.is_some())));
            m.put_ratio(Quantity::Diameter, run.map(|r| r.diameter as f64));
            m.put(Quantity::BfsRuns, run.map(|r| r.bfs_runs as f64));
        }
    }
    Ok(m.out)
}

/// Runs trial `trial` at grid point `point`; a pure function of its arguments
/// apart from `wall_ms`.
pub fn run_trial(cfg: &SweepConfig, point: usize, trial: usize) -> Result<TrialRecord> {
    let p = cfg.point_p(point).map_err(Error::InfeasiblePoint)?;
    let seed = trial_seed(cfg.master_seed, point, trial);
    let mut params = ModelParams::new(cfg.n, cfg.r, p, seed)?;
    if let Some(p1) = cfg.p1 {
        params = params.with_p1(p1)?;
    }
    let start = Instant::now();
    let inst = generate(&params)?;
    let observations = measure(cfg, &inst)?;
    let wall_ms = cfg.wall_times.then(|| start.elapsed().as_secs_f64() * 1e3);
    Ok(TrialRecord {
        theorem: cfg.theorem,
        point,
        n: cfg.n,
        r: cfg.r,
        p,
        c_or_k: cfg.grid.c_or_k(cfg.grid.values[point]),
        trial,
        seed,
        observations,
        wall_ms,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantitySummary {
    pub quantity: Quantity,
    pub count: usize,
    pub mean: Option<f64>,
    pub stderr: Option<f64>,
    pub ratio_count: usize,
    pub ratio_mean: Option<f64>,
    pub ratio_stderr: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub point: usize,
    pub value: f64,
    pub p: Option<f64>,
    pub c_or_k: Option<f64>,
    /// Set when the point was skipped.
    pub infeasible: Option<String>,
    pub trials: usize,
    pub success: Option<Proportion>,
    pub quantities: Vec<QuantitySummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub schema_version: u32,
    pub csv_schema_version: u32,
    pub theorem: Theorem,
    pub n: usize,
    pub r: f64,
    pub grid_kind: GridKind,
    pub trials: usize,
    pub master_seed: u64,
    pub notes: Vec<String>,
    pub points: Vec<PointSummary>,
}

impl SweepSummary {
    /// Grid value where the success fraction crosses `target` (after
    /// isotonic smoothing), skipping infeasible points.
    pub fn threshold_crossing(&self, target: f64) -> Result<f64> {
        threshold_crossing(self, target)
    }
}

pub fn threshold_crossing(summary: &SweepSummary, target: f64) -> Result<f64> {
    let mut pts: Vec<(f64, f64, f64)> = summary
        .points
        .iter()
        .filter_map(|p| p.success.map(|s| (p.value, s.fraction, s.trials as f64)))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.is_empty() {
        return Err(Error::NoCrossing("no feasible point carries a success fraction".into()));
    }
    let xs: Vec<f64> = pts.iter().map(|t| t.0).collect();
    let ys: Vec<f64> = pts.iter().map(|t| t.1).collect();
    let ws: Vec<f64> = pts.iter().map(|t| t.2).collect();
    crossing(&xs, &ys, &ws, target)
}

fn summarize_point(cfg: &SweepConfig, point: usize, records: &[TrialRecord]) -> PointSummary {
    let value = cfg.grid.values[point];
    let base = PointSummary {
        point,
        value,
        p: cfg.point_p(point).ok(),
        c_or_k: cfg.grid.c_or_k(value),
        infeasible: cfg.point_p(point).err(),
        trials: records.len(),
        success: None,
        quantities: Vec::new(),
    };
    if records.is_empty() {
        return base;
    }
    let mut order: Vec<Quantity> = Vec::new();
    for o in records.iter().flat_map(|r| &r.observations) {
        if !order.contains(&o.quantity) {
            order.push(o.quantity);
        }
    }
    let quantities = order
        .into_iter()
        .map(|q| {
            let values: Vec<f64> = records.iter().filter_map(|r| r.value(q)).collect();
            let ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio(q)).collect();
            let vs = mean_stderr(&values);
            let rs = mean_stderr(&ratios);
            QuantitySummary {
                quantity: q,
                count: values.len(),
                mean: vs.map(|t| t.0),
                stderr: vs.map(|t| t.1),
                ratio_count: ratios.len(),
                ratio_mean: rs.map(|t| t.0),
                ratio_stderr: rs.map(|t| t.1),
            }
        })
        .collect();
    let success = cfg.theorem.indicator().map(|q| {
        let wins = records.iter().filter(|r| r.value(q) == Some(1.0)).count();
        Proportion::new(wins, records.len())
    });
    PointSummary {
        success,
        quantities,
        ..base
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub records: Vec<TrialRecord>,
    pub summary: SweepSummary,
}

/// Runs every `(point, trial)` of `cfg`. Infeasible points are reported in
/// the summary and skipped; records are ordered by `(point, trial)`
/// whatever the worker count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutput> {
    cfg.validate()?;
    let tasks: Vec<(usize, usize)> = (0..cfg.grid.values.len())
        .filter(|&pt| cfg.point_p(pt).is_ok())
        .flat_map(|pt| (0..cfg.trials).map(move |t| (pt, t)))
        .collect();
    let batch = if cfg.batch == 0 { tasks.len().max(1) } else { cfg.batch };
    let mut records = Vec::with_capacity(tasks.len());
    for chunk in tasks.chunks(batch) {
        for rec in par::map_slice(chunk, |&(pt, t)| run_trial(cfg, pt, t)) {
            records.push(rec?);
        }
    }
    let mut points = Vec::with_capacity(cfg.grid.values.len());
    for pt in 0..cfg.grid.values.len() {
        let lo = records.partition_point(|r| r.point < pt);
        let hi = records.partition_point(|r| r.point <= pt);
        points.push(summarize_point(cfg, pt, &records[lo..hi]));
    }
    let mut notes = Vec::new();
    if cfg.theorem == Theorem::Clique {
        notes.push(literal_clique_regime(cfg.n, cfg.r));
    }
    for p in &points {
        if let Some(why) = &p.infeasible {
            notes.push(format!("INFEASIBLE_POINT {}: {why}", p.point));
        }
    }
    let summary = SweepSummary {
        schema_version: SUMMARY_SCHEMA_VERSION,
        csv_schema_version: CSV_SCHEMA_VERSION,
        theorem: cfg.theorem,
        n: cfg.n,
        r: cfg.r,
        grid_kind: cfg.grid.kind,
        trials: cfg.trials,
        master_seed: cfg.master_seed,
        notes,
        points,
    };
    Ok(SweepOutput { records, summary })
}
