//! The ten acceptance criteria of the workspace as plain functions.
//!
//! Each criterion runs its experiments, evaluates a list of checks with the
//! tolerances fixed below, and returns a [`CriterionReport`]. The report's
//! `transcript` is a deterministic dump of everything that was measured
//! (CSV rows of every sweep plus the check details); criterion 10 reruns
//! the others under a different worker count and compares transcripts
//! byte for byte.

use std::fmt::Write as _;
use std::time::Instant;

use gnrp_core::experiments::{
    run_sweep, threshold_crossing, write_csv, GridKind, ParamGrid, Quantity, SweepConfig, SweepOutput, Theorem,
};
use gnrp_core::generator::{generate, Channel, ModelParams};
use gnrp_core::graph::{diameter_exact, Graph};
use gnrp_core::hamilton::{cell_hamilton, hamilton_constructive, hamilton_exact_small, verify_hamilton, HamOptions};
use gnrp_core::solvers::verify::{is_clique, is_independent, is_proper_coloring};
use gnrp_core::solvers::{chromatic_sandwich, clique_block_scan, dsatur, max_clique_exact, mis_exact};
use gnrp_core::{oracle, par, rng, Error, Result};
use rand::Rng;

/// Checks that cannot pass at the prescribed parameters, with the reason.
/// They still run and still report FAIL; the test target treats a failure
/// of exactly these checks as expected and flags it if one starts passing.
pub const KNOWN_UNATTAINABLE: &[(u8, &str, &str)] = &[(
    5,
    "(b) p=0.99",
    "(1-p)nr^2 = 0.5 at n=20000, r=0.05, p=0.99, so 2 ln[(1-p)nr^2]/(1-p) is negative and no ratio can land in [0.3, 1.1]",
)];

/// Failing checks of `report` that are not listed in [`KNOWN_UNATTAINABLE`],
/// plus listed checks that unexpectedly passed.
pub fn unexpected_outcomes(report: &CriterionReport) -> Vec<String> {
    let known = |label: &str| {
        KNOWN_UNATTAINABLE
            .iter()
            .any(|&(id, prefix, _)| id == report.id && label.starts_with(prefix))
    };
    let mut out: Vec<String> = report
        .checks
        .iter()
        .filter(|c| c.passed == known(&c.label))
        .map(|c| {
            if c.passed {
                format!(
                    "criterion {}: `{}` passed but is listed as unattainable",
                    report.id, c.label
                )
            } else {
                format!("criterion {}: `{}` failed", report.id, c.label)
            }
        })
        .collect();
    if report.elapsed_s > report.limit_s {
        out.push(format!(
            "criterion {}: {:.1} s over the {:.0} s limit",
            report.id, report.elapsed_s, report.limit_s
        ));
    }
    out
}

/// Master seed shared by every criterion.
pub const MASTER_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    /// Deterministic record of the measurements.
    pub transcript: Vec<u8>,
    pub elapsed_s: f64,
    pub limit_s: f64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.elapsed_s <= self.limit_s
    }

    /// `criterion N PASS|FAIL title (t s / limit s)` followed by one
    /// indented line per check.
    pub fn render(&self) -> String {
        let mut s = format!(
            "criterion {:>2} {} {} ({:.1} s, limit {:.0} s)\n",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_s,
            self.limit_s
        );
        for c in &self.checks {
            let _ = writeln!(
                s,
                "    [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.label,
                c.detail
            );
        }
        s
    }
}

struct Builder {
    checks: Vec<Check>,
    transcript: Vec<u8>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            checks: Vec::new(),
            transcript: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        let c = Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        };
        let _ = writeln!(
            Transcript(&mut self.transcript),
            "check,{},{},{}",
            c.label,
            c.passed,
            c.detail
        );
        self.checks.push(c);
    }

    fn sweep(&mut self, cfg: &SweepConfig) -> Result<SweepOutput> {
        let out = run_sweep(cfg)?;
        write_csv(&out.records, &mut self.transcript)?;
        Ok(out)
    }

    fn note(&mut self, line: impl AsRef<str>) {
        self.transcript.extend_from_slice(line.as_ref().as_bytes());
        self.transcript.push(b'\n');
    }
}

struct Transcript<'a>(&'a mut Vec<u8>);

impl std::fmt::Write for Transcript<'_> {
    fn write_str(&mut self, s: &str) -> std::fmt::Result {
        self.0.extend_from_slice(s.as_bytes());
        Ok(())
    }
}

pub const TITLES: [&str; 10] = [
    "generator matches brute force; channel marginals",
    "degree concentration",
    "connectivity threshold",
    "Hamilton cycle construction",
    "clique window",
    "independence sandwich",
    "chromatic sandwich",
    "diameter",
    "solver oracles",
    "determinism across worker counts",
];

const LIMITS_S: [f64; 10] = [
    10.0,
    120.0,
    900.0,
    1800.0,
    1200.0,
    600.0,
    600.0,
    1200.0,
    300.0,
    f64::INFINITY,
];

fn count(
    records: &[gnrp_core::experiments::TrialRecord],
    pred: impl Fn(&gnrp_core::experiments::TrialRecord) -> bool,
) -> usize {
    records.iter().filter(|r| pred(r)).count()
}

fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                e.push((u, v));
            }
        }
    }
    Graph::from_edges(n, e).expect("valid edges")
}

fn c1(b: &mut Builder) -> Result<()> {
    let combos: Vec<(f64, f64)> = [0.05, 0.2, 0.45]
        .iter()
        .flat_map(|&r| [0.0, 0.5, 1.0].map(move |p| (r, p)))
        .collect();
    let (mut mismatches, mut bad_channels) = (0, 0);
    let (mut pooled, mut one, mut two) = (0u64, 0u64, 0u64);
    for i in 0..100 {
        let (r, p) = combos[i % combos.len()];
        let seed = rng::derive_indexed(MASTER_SEED, rng::Stream::Trial, i as u64);
        let inst = generate(&ModelParams::new(300, r, p, seed)?)?;
        let geo = inst.geo_edges();
        if geo != oracle::all_pairs_rgg(inst.points(), r) {
            mismatches += 1;
        }
        for (u, v, c) in inst.kept_edges() {
            let pair = (u as u32, v as u32);
            if geo.binary_search(&pair).is_err() || (p == 1.0 && c != Channel::Both) {
                bad_channels += 1;
            }
        }
        if p == 0.0 && inst.kept_edge_count() != 0 {
            bad_channels += 1;
        }
        if p == 0.5 {
            pooled += geo.len() as u64;
            for (_, _, c) in inst.kept_edges() {
                one += c.has_one() as u64;
                two += c.has_two() as u64;
            }
        }
        b.note(format!("instance,{i},{r},{p},{},{}", geo.len(), inst.kept_edge_count()));
    }
    b.check(
        "geometric edges equal brute force (100 instances)",
        mismatches == 0,
        format!("{mismatches} mismatching instances"),
    );
    b.check(
        "kept edges geometric, p=0 empty, p=1 all both",
        bad_channels == 0,
        format!("{bad_channels} violations"),
    );
    let p1 = 1.0 - 0.5f64.sqrt();
    let sigma = (p1 * (1.0 - p1) / pooled as f64).sqrt();
    for (name, k) in [("channel 1", one), ("channel 2", two)] {
        let f = k as f64 / pooled as f64;
        let z = (f - p1) / sigma;
        b.check(
            format!("{name} marginal within 3 sigma of p1"),
            z.abs() <= 3.0,
            format!("fraction {f:.5} vs {p1:.5} over {pooled} pooled geometric edges (z = {z:.2})"),
        );
    }
    Ok(())
}

fn c2(b: &mut Builder) -> Result<()> {
    let cfg = SweepConfig::new(
        Theorem::Degree,
        20_000,
        0.05,
        ParamGrid::new(GridKind::P, vec![0.25]),
        100,
        MASTER_SEED,
    );
    let out = b.sweep(&cfg)?;
    let ok = count(&out.records, |r| r.value(Quantity::WithinBand) == Some(1.0));
    let delta = out.records[0].value(Quantity::Delta).unwrap_or(f64::NAN);
    b.check(
        "all degrees within (1±δ)(n-1)q in >= 95/100 seeds",
        ok >= 95,
        format!("{ok}/100, δ = {delta:.4}"),
    );
    Ok(())
}

fn c3(b: &mut Builder) -> Result<()> {
    let grid = ParamGrid::new(GridKind::C, vec![0.6, 0.8, 1.0, 1.2, 1.4]);
    let cfg = SweepConfig::new(Theorem::Connectivity, 30_000, 0.03, grid, 30, MASTER_SEED);
    let out = b.sweep(&cfg)?;
    let frac = |i: usize| out.summary.points[i].success.map_or(f64::NAN, |s| s.fraction);
    let fr: Vec<String> = (0..5).map(|i| format!("{:.3}", frac(i))).collect();
    b.check(
        "connected fraction <= 0.2 at c=0.6",
        frac(0) <= 0.2,
        format!("fractions by c: {}", fr.join(" ")),
    );
    b.check(
        "connected fraction >= 0.8 at c=1.4",
        frac(4) >= 0.8,
        format!("{:.3}", frac(4)),
    );
    let low: Vec<_> = out
        .records
        .iter()
        .filter(|r| r.point == 0 && r.value(Quantity::Connected) == Some(0.0))
        .collect();
    let with_iso = low
        .iter()
        .filter(|r| r.value(Quantity::Isolated).unwrap_or(0.0) > 0.0)
        .count();
    b.check(
        "isolated vertex in >= 80% of disconnected trials at c=0.6",
        !low.is_empty() && with_iso * 10 >= low.len() * 8,
        format!("{with_iso}/{}", low.len()),
    );
    match threshold_crossing(&out.summary, 0.5) {
        Ok(c) => b.check(
            "threshold_crossing(0.5) in [0.8, 1.3]",
            (0.8..=1.3).contains(&c),
            format!("{c:.4}"),
        ),
        Err(e) => b.check("threshold_crossing(0.5) in [0.8, 1.3]", false, e.to_string()),
    }
    Ok(())
}

fn c4(b: &mut Builder) -> Result<()> {
    let (n, r, k) = (100_000, 0.05, 40.0);
    let grid = ParamGrid::new(GridKind::K, vec![k]);
    let cfg = SweepConfig::new(Theorem::Ham, n, r, grid, 10, MASTER_SEED);
    let p = cfg.point_p(0).map_err(Error::InfeasiblePoint)?;
    let (mut found, mut unverified) = (0, 0);
    for trial in 0..cfg.trials {
        let seed = gnrp_core::experiments::trial_seed(MASTER_SEED, 0, trial);
        let inst = generate(&ModelParams::new(n, r, p, seed)?)?;
        let opts = HamOptions {
            seed: rng::derive(seed, rng::Stream::Hamilton),
            ..HamOptions::default()
        };
        match hamilton_constructive(&inst, &opts) {
            Ok(cert) => {
                found += 1;
                let ok = verify_hamilton(&inst, &cert.order);
                unverified += usize::from(!ok);
                b.note(format!(
                    "trial,{trial},{seed},certificate,{ok},splices={},empty={},degenerate={},dp={}",
                    cert.stats.splices, cert.stats.empty_cells, cert.stats.degenerate_cells, cert.stats.dp_fallbacks
                ));
            }
            Err(f) => b.note(format!("trial,{trial},{seed},failure,{f}")),
        }
    }
    b.check(
        "verified certificate in >= 9/10 seeds",
        found >= 9,
        format!("{found}/10 at p = {p:.4}"),
    );
    b.check(
        "every returned certificate passes verify_hamilton",
        unverified == 0,
        format!("{unverified} unverified"),
    );
    Ok(())
}

fn c5(b: &mut Builder) -> Result<()> {
    b.note(gnrp_core::experiments::literal_clique_regime(20_000, 0.05));
    let mut mismatch = Vec::new();
    let shapes = [
        (120, 0.1, 0.9),
        (200, 0.08, 1.0),
        (300, 0.05, 0.95),
        (400, 0.06, 0.7),
        (250, 0.3, 0.8),
    ];
    for i in 0..50 {
        let (n, r, p) = shapes[i % shapes.len()];
        let seed = rng::derive_indexed(MASTER_SEED, rng::Stream::Sampling, i as u64);
        let inst = generate(&ModelParams::new(n, r, p, seed)?)?;
        let scan = clique_block_scan(&inst, u64::MAX)?;
        let whole = max_clique_exact(inst.graph(), u64::MAX)?;
        if scan.size != whole.size || !is_clique(inst.graph(), &scan.witness) {
            mismatch.push(i);
        }
        b.note(format!("block_scan,{i},{n},{r},{p},{},{}", scan.size, whole.size));
    }
    b.check(
        "(a) block scan equals whole-graph exact on 50 instances",
        mismatch.is_empty(),
        format!("mismatches at {mismatch:?}"),
    );

    let cfg = SweepConfig::new(
        Theorem::Clique,
        20_000,
        0.05,
        ParamGrid::new(GridKind::P, vec![0.9, 0.95, 0.99]),
        30,
        MASTER_SEED,
    );
    let out = b.sweep(&cfg)?;
    b.note(out.summary.notes.join("; "));
    for (pt, p) in [0.9, 0.95, 0.99].into_iter().enumerate() {
        let recs: Vec<_> = out.records.iter().filter(|r| r.point == pt).collect();
        let inside = recs
            .iter()
            .filter(|r| r.ratio(Quantity::Clique).is_some_and(|x| (0.3..=1.1).contains(&x)))
            .count();
        let undefined = recs.iter().filter(|r| r.ratio(Quantity::Clique).is_none()).count();
        let sizes: Vec<f64> = recs.iter().filter_map(|r| r.value(Quantity::Clique)).collect();
        let mean = sizes.iter().sum::<f64>() / sizes.len().max(1) as f64;
        let formula = gnrp_core::experiments::formula_value(Theorem::Clique, 20_000, 0.05, p)
            .map_or_else(|_| "undefined ((1-p)nr^2 <= 1)".to_string(), |v| format!("{v:.2}"));
        b.check(
            format!("(b) p={p}: ratio in [0.3, 1.1] in >= 27/30"),
            inside * 10 >= recs.len() * 9,
            format!(
                "{inside}/{} inside, {undefined} undefined; mean clique {mean:.2}; formula {formula}",
                recs.len()
            ),
        );
    }
    Ok(())
}

fn sandwich_cfg(theorem: Theorem) -> SweepConfig {
    SweepConfig::new(
        theorem,
        20_000,
        0.05,
        ParamGrid::new(GridKind::P, vec![0.5]),
        100,
        MASTER_SEED,
    )
}

fn c6(b: &mut Builder) -> Result<()> {
    let out = b.sweep(&sandwich_cfg(Theorem::Alpha))?;
    let recs = &out.records;
    let ordered = count(recs, |r| r.value(Quantity::AlphaLower) <= r.value(Quantity::AlphaUpper));
    b.check(
        "alpha_lower <= alpha_upper in every seed",
        ordered == recs.len(),
        format!("{ordered}/{}", recs.len()),
    );
    let lo = count(recs, |r| r.ratio(Quantity::AlphaLower).is_some_and(|x| x >= 0.1));
    let hi = count(recs, |r| r.ratio(Quantity::AlphaUpper).is_some_and(|x| x <= 10.0));
    let pair = count(recs, |r| {
        r.ratio(Quantity::AlphaLower).is_some_and(|x| x >= 0.1)
            && r.ratio(Quantity::AlphaUpper).is_some_and(|x| x <= 10.0)
    });
    let mean = |q| recs.iter().filter_map(|r| r.value(q)).sum::<f64>() / recs.len() as f64;
    b.check(
        "lower >= 0.1x and upper <= 10x formula in >= 95 seeds",
        pair >= 95,
        format!(
            "{pair}/100 (lower {lo}, upper {hi}); mean lower {:.1}, mean upper {:.1}",
            mean(Quantity::AlphaLower),
            mean(Quantity::AlphaUpper)
        ),
    );
    Ok(())
}

fn c7(b: &mut Builder) -> Result<()> {
    let out = b.sweep(&sandwich_cfg(Theorem::Chi))?;
    let recs = &out.records;
    let get = |r: &gnrp_core::experiments::TrialRecord| {
        (
            r.value(Quantity::ChiLower).unwrap_or(f64::NAN),
            r.value(Quantity::ChiUpper).unwrap_or(f64::NAN),
        )
    };
    let ordered = count(recs, |r| {
        let (l, u) = get(r);
        l <= u
    });
    b.check(
        "chi lower <= upper in every seed",
        ordered == recs.len(),
        format!("{ordered}/{}", recs.len()),
    );
    let tight = count(recs, |r| {
        let (l, u) = get(r);
        l > 0.0 && u / l <= 16.0
    });
    let worst = recs.iter().map(|r| get(r).1 / get(r).0).fold(0.0, f64::max);
    b.check(
        "upper/lower <= 16 in >= 95 seeds",
        tight >= 95,
        format!("{tight}/100, worst ratio {worst:.2}"),
    );
    let near = count(recs, |r| {
        [Quantity::ChiLower, Quantity::ChiUpper]
            .iter()
            .all(|&q| r.ratio(q).is_some_and(|x| (0.1..=10.0).contains(&x)))
    });
    let (ml, mu) = recs.iter().fold((0.0, 0.0), |(a, c), r| (a + get(r).0, c + get(r).1));
    b.check(
        "both bounds within factor 10 of the formula in >= 95 seeds",
        near >= 95,
        format!("{near}/100; mean lower {:.2}, mean upper {:.2}", ml / 100.0, mu / 100.0),
    );
    Ok(())
}

fn c8(b: &mut Builder) -> Result<()> {
    let cfg = SweepConfig::new(
        Theorem::Diam,
        50_000,
        0.06,
        ParamGrid::new(GridKind::P, vec![0.9]),
        20,
        MASTER_SEED,
    );
    let out = b.sweep(&cfg)?;
    let connected: Vec<_> = out
        .records
        .iter()
        .filter(|r| r.value(Quantity::Connected) == Some(1.0))
        .collect();
    let inside = connected
        .iter()
        .filter(|r| r.ratio(Quantity::Diameter).is_some_and(|x| (0.3..=3.0).contains(&x)))
        .count();
    let ratios: Vec<String> = connected
        .iter()
        .filter_map(|r| r.ratio(Quantity::Diameter))
        .map(|x| format!("{x:.3}"))
        .collect();
    b.check(
        "diameter ratio in [0.3, 3] in >= 90% of connected trials",
        !connected.is_empty() && inside * 10 >= connected.len() * 9,
        format!(
            "{inside}/{} connected of 20; ratios {}",
            connected.len(),
            ratios.join(" ")
        ),
    );
    let mut bad = Vec::new();
    for i in 0..20 {
        let seed = rng::derive_indexed(MASTER_SEED, rng::Stream::Sampling, 1000 + i as u64);
        let inst = generate(&ModelParams::new(300, 0.15, 0.8, seed)?)?;
        let fw = oracle::floyd_warshall_diameter(inst.graph());
        let ours = diameter_exact(inst.graph()).ok();
        if fw != ours {
            bad.push(i);
        }
        b.note(format!("floyd_warshall,{i},{fw:?},{ours:?}"));
    }
    b.check(
        "diameter_exact equals Floyd-Warshall on 20 instances (n=300)",
        bad.is_empty(),
        format!("mismatches at {bad:?}"),
    );
    Ok(())
}

fn c9(b: &mut Builder) -> Result<()> {
    let mut rng = rng::stream_rng(rng::derive(MASTER_SEED, rng::Stream::Sampling));
    let (mut clique_bad, mut mis_bad, mut improper) = (0, 0, 0);
    for _ in 0..200 {
        let n = rng.random_range(1..=18);
        let g = random_graph(n, rng.random_range(0.1..0.9), &mut rng);
        let w = max_clique_exact(&g, u64::MAX)?;
        if w.size != oracle::clique_number_exhaustive(&g) || !is_clique(&g, &w.witness) {
            clique_bad += 1;
        }
        let a = mis_exact(&g, u64::MAX)?;
        if a.size != oracle::independence_number_exhaustive(&g) || !is_independent(&g, &a.witness) {
            mis_bad += 1;
        }
        improper += usize::from(!is_proper_coloring(&g, &dsatur(&g).assignment));
    }
    b.check(
        "max_clique_exact vs exhaustive (200 graphs, n <= 18)",
        clique_bad == 0,
        format!("{clique_bad} disagreements"),
    );
    b.check(
        "mis_exact vs exhaustive (200 graphs, n <= 18)",
        mis_bad == 0,
        format!("{mis_bad} disagreements"),
    );

    let mut ham_bad = 0;
    let mut hamiltonian = 0;
    for i in 0..100 {
        let n = rng.random_range(3..=12);
        let g = random_graph(n, rng.random_range(0.2..0.8), &mut rng);
        let truth = oracle::hamiltonian_subset_dp(&g);
        hamiltonian += usize::from(truth);
        let heur = cell_hamilton(&g, i, 8)?;
        let valid = heur
            .as_ref()
            .is_none_or(|c| c.len() == n && (0..n).all(|k| g.has_edge(c[k], c[(k + 1) % n])));
        if hamilton_exact_small(&g)? != truth || heur.is_some() != truth || !valid {
            ham_bad += 1;
        }
        improper += usize::from(!is_proper_coloring(&g, &dsatur(&g).assignment));
    }
    b.check(
        "cell_hamilton and hamilton_exact_small vs subset DP (100 graphs, n <= 12)",
        ham_bad == 0,
        format!("{ham_bad} disagreements; {hamiltonian} Hamiltonian"),
    );

    let mut outside = 0;
    for i in 0..100 {
        let n = rng.random_range(2..=14);
        let seed = rng::derive_indexed(MASTER_SEED, rng::Stream::Sampling, 5000 + i);
        let inst = generate(&ModelParams::new(
            n,
            rng.random_range(0.2..0.45),
            rng.random_range(0.3..1.0),
            seed,
        )?)?;
        let chi = oracle::chromatic_number_exhaustive(inst.graph());
        let bounds = chromatic_sandwich(&inst, u64::MAX)?;
        if !(bounds.lower <= chi && chi <= bounds.upper) {
            outside += 1;
        }
        improper += usize::from(!is_proper_coloring(inst.graph(), &bounds.coloring.assignment));
        improper += usize::from(!is_proper_coloring(inst.graph(), &dsatur(inst.graph()).assignment));
    }
    b.check(
        "chromatic oracle inside [lower, upper] (100 instances, n <= 14)",
        outside == 0,
        format!("{outside} outside"),
    );
    b.check(
        "every DSATUR / sandwich colouring is proper",
        improper == 0,
        format!("{improper} improper"),
    );
    Ok(())
}

/// Runs criterion `id` (1..=9) inside a pool of `workers` threads.
pub fn run_criterion(id: u8, workers: usize) -> Result<CriterionReport> {
    let f: fn(&mut Builder) -> Result<()> = match id {
        1 => c1,
        2 => c2,
        3 => c3,
        4 => c4,
        5 => c5,
        6 => c6,
        7 => c7,
        8 => c8,
        9 => c9,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "criterion {id} is not a standalone experiment"
            )))
        }
    };
    let start = Instant::now();
    let mut b = Builder::new();
    par::with_workers(workers, || f(&mut b))?;
    Ok(CriterionReport {
        id,
        title: TITLES[id as usize - 1],
        checks: b.checks,
        transcript: b.transcript,
        elapsed_s: start.elapsed().as_secs_f64(),
        limit_s: LIMITS_S[id as usize - 1],
    })
}

/// Criterion 10: reruns every criterion in `earlier` with `workers` threads
/// and compares transcripts byte for byte.
pub fn determinism(earlier: &[CriterionReport], workers: usize) -> Result<CriterionReport> {
    let start = Instant::now();
    let mut b = Builder::new();
    for first in earlier {
        let again = run_criterion(first.id, workers)?;
        let same = again.transcript == first.transcript;
        b.check(
            format!("criterion {} transcript identical with {workers} worker(s)", first.id),
            same,
            format!("{} bytes", first.transcript.len()),
        );
    }
    Ok(CriterionReport {
        id: 10,
        title: TITLES[9],
        checks: b.checks,
        transcript: b.transcript,
        elapsed_s: start.elapsed().as_secs_f64(),
        limit_s: LIMITS_S[9],
    })
}

/// Runs the selected criteria (10 meaning the determinism rerun of the
/// others selected) and returns their reports in order.
pub fn run_suite(
    ids: &[u8],
    workers: usize,
    rerun_workers: usize,
    mut progress: impl FnMut(&CriterionReport),
) -> Result<Vec<CriterionReport>> {
    let mut reports = Vec::new();
    for &id in ids.iter().filter(|&&id| id != 10) {
        let rep = run_criterion(id, workers)?;
        progress(&rep);
        reports.push(rep);
    }
    if ids.contains(&10) {
        let rep = determinism(&reports, rerun_workers)?;
        progress(&rep);
        reports.push(rep);
    }
    Ok(reports)
}

/// Parses `"1,3,5-7"`; an empty string selects everything.
pub fn parse_selection(s: &str) -> Result<Vec<u8>> {
    if s.trim().is_empty() {
        return Ok((1..=10).collect());
    }
    let mut ids = Vec::new();
    for part in s.split(',').map(str::trim) {
        let bad = || Error::InvalidParameter(format!("bad criterion selection `{part}`"));
        let (a, z) = match part.split_once('-') {
            Some((a, z)) => (
                a.trim().parse::<u8>().map_err(|_| bad())?,
                z.trim().parse::<u8>().map_err(|_| bad())?,
            ),
            None => {
                let v = part.parse::<u8>().map_err(|_| bad())?;
                (v, v)
            }
        };
        if a == 0 || z > 10 || a > z {
            return Err(bad());
        }
        ids.extend(a..=z);
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}
