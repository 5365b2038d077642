//! `gnrp`: generate, analyze and sweep intersection random graphs on the torus.
//!
//! Exit codes: 0 success, 1 a verifier or acceptance check failed,
//! 2 usage error or invalid input.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gnrp_core::experiments::{self, GridKind, ParamGrid, SweepConfig, Theorem};
use gnrp_core::graph::{components, degree_report, diameter_bounded, isolated_count};
use gnrp_core::hamilton::{self, HamOptions, SpliceMode};
use gnrp_core::rng::{derive, Stream};
use gnrp_core::solvers::{self, verify, BudgetPolicy};
use gnrp_core::{generate, io as gio, par, Error, GnrpInstance, ModelParams};

#[derive(Parser, Debug)]
#[command(
    name = "gnrp",
    version,
    about = "Intersection random graphs G(n,r,p) on the unit torus"
)]
struct Cli {
    /// Worker threads (0 = one per CPU).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Sample one instance and write it out.
    Generate(GenerateArgs),
    /// Compute properties of one instance, with verified witnesses.
    Analyze(AnalyzeArgs),
    /// Monte Carlo sweep over a parameter grid.
    Sweep(SweepArgs),
    /// Run the acceptance criteria.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct ModelArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// Channel-1 retention probability; default splits p evenly.
    #[arg(long)]
    p1: Option<f64>,
    #[arg(long, env = "GNRP_SEED", default_value_t = 0)]
    seed: u64,
}

impl ModelArgs {
    fn params(&self) -> anyhow::Result<ModelParams> {
        let (Some(n), Some(r), Some(p)) = (self.n, self.r, self.p) else {
            bail!(Usage("--n, --r and --p are required".into()));
        };
        let mut params = ModelParams::new(n, r, p, self.seed)?;
        if let Some(p1) = self.p1 {
            params = params.with_p1(p1)?;
        }
        Ok(params)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Edgelist,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Output file (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Instance JSON; otherwise the model flags generate one in memory.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_delimiter = ',', default_value = "degree,conn,diam,clique,alpha,chi,ham")]
    props: Vec<Prop>,
    #[arg(long, default_value_t = solvers::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = HamOptions::default().restarts)]
    restarts: u32,
    #[arg(long)]
    strict_splice: bool,
    /// Directory for witness id arrays (clique, independent set, coloring, hamilton).
    #[arg(long)]
    export: Option<PathBuf>,
    /// Check a certificate against the instance: KIND=PATH with KIND one of
    /// clique, independent, coloring, hamilton. Repeatable.
    #[arg(long = "check-cert")]
    check_cert: Vec<String>,
    /// JSON report.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Prop {
    Degree,
    Conn,
    Diam,
    Clique,
    Alpha,
    Chi,
    Ham,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: f64,
    /// Grid of c values (`a:b:step` inclusive, or a comma list).
    #[arg(long, conflicts_with_all = ["k", "p", "grid"])]
    c: Option<String>,
    /// Grid of K values.
    #[arg(long, conflicts_with_all = ["p", "grid"])]
    k: Option<String>,
    /// Grid of p values.
    #[arg(long, conflicts_with = "grid")]
    p: Option<String>,
    /// Grid in the theorem's default parametrisation.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, default_value_t = 30)]
    trials: usize,
    #[arg(long, env = "GNRP_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    p1: Option<f64>,
    /// CSV of per-trial observations (stdout if absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long)]
    wall_times: bool,
    /// Trials run concurrently (0 = all).
    #[arg(long, default_value_t = 0)]
    batch: usize,
    #[arg(long, default_value_t = solvers::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = HamOptions::default().restarts)]
    restarts: u32,
    #[arg(long)]
    strict_splice: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Criteria to run, e.g. `1,3,5-7` (default all).
    #[arg(long, default_value = "")]
    only: String,
    /// Pool size for the determinism rerun.
    #[arg(long, default_value_t = 1)]
    rerun_workers: usize,
}

/// Marks an error as a usage problem (exit 2).
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// A check failed (exit 1).
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<CheckFailed>().is_some() {
        return 1;
    }
    if e.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::InvalidParameter(_) | Error::Malformed(_) | Error::Io(_) | Error::InfeasiblePoint(_)) => 2,
        Some(_) => 1,
        None if e.downcast_ref::<io::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let workers = cli.workers;
    match par::with_workers(workers, move || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Generate(a) => cmd_generate(a),
        Cmd::Analyze(a) => cmd_analyze(a),
        Cmd::Sweep(a) => cmd_sweep(a),
        Cmd::Verify(a) => cmd_verify(a, cli.workers),
    }
}

fn writer(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn cmd_generate(a: GenerateArgs) -> anyhow::Result<()> {
    let inst = generate(&a.model.params()?)?;
    let mut out = writer(a.out.as_deref())?;
    match a.format {
        Format::Json => gio::write_instance_json(&inst, &mut out)?,
        Format::Edgelist => gio::write_edge_list(&inst, &mut out)?,
    }
    out.flush()?;
    if a.out.is_some() {
        eprintln!(
            "n={} edges={} seed={}",
            inst.n(),
            inst.kept_edge_count(),
            inst.params().seed
        );
    }
    Ok(())
}

fn load_instance(a: &AnalyzeArgs) -> anyhow::Result<GnrpInstance> {
    match &a.input {
        Some(path) => {
            if a.model.n.is_some() || a.model.r.is_some() || a.model.p.is_some() {
                bail!(Usage("--in cannot be combined with --n/--r/--p".into()));
            }
            let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            Ok(gio::read_instance_json(BufReader::new(f))?)
        }
        None => Ok(generate(&a.model.params()?)?),
    }
}

fn formula(theorem: Theorem, params: &ModelParams) -> Value {
    match experiments::formula_value(theorem, params.n, params.r, params.p) {
        Ok(v) => json!(v),
        Err(_) => Value::Null,
    }
}

fn export_ids<T: Copy + Into<u64>>(dir: Option<&Path>, name: &str, ids: &[T]) -> anyhow::Result<()> {
    if let Some(dir) = dir {
        let path = dir.join(name);
        let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(f);
        gio::write_ids(ids, &mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn to_u64(v: &[usize]) -> Vec<u64> {
    v.iter().map(|&x| x as u64).collect()
}

fn cmd_analyze(a: AnalyzeArgs) -> anyhow::Result<()> {
    let inst = load_instance(&a)?;
    let params = *inst.params();
    let g = inst.graph();
    if let Some(dir) = &a.export {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let export = a.export.as_deref();
    let mut report = serde_json::Map::new();
    report.insert("params".into(), serde_json::to_value(params)?);
    report.insert("edges".into(), json!(inst.kept_edge_count()));
    let mut summary = vec![format!(
        "n={} r={} p={} seed={} edges={}",
        params.n,
        params.r,
        params.p,
        params.seed,
        inst.kept_edge_count()
    )];
    let mut failures = Vec::new();

    for prop in dedup(&a.props) {
        match prop {
            Prop::Degree => {
                if g.n() == 0 {
                    report.insert("degree".into(), Value::Null);
                    continue;
                }
                let rep = degree_report(g, params.q())?;
                summary.push(format!(
                    "degree: min {} max {} mean {:.3} expected {:.3} delta {:.4} within band {}",
                    rep.min, rep.max, rep.mean, rep.expected, rep.delta, rep.within_band
                ));
                report.insert("degree".into(), serde_json::to_value(rep)?);
            }
            Prop::Conn => {
                let comps = components(g);
                let isolated = isolated_count(g);
                summary.push(format!(
                    "connectivity: connected {} components {} isolated {}",
                    comps.is_connected(),
                    comps.count,
                    isolated
                ));
                report.insert(
                    "connectivity".into(),
                    json!({ "connected": comps.is_connected(), "components": comps.count, "isolated": isolated }),
                );
            }
            Prop::Diam => {
                let v = match diameter_bounded(g) {
                    Ok(run) => {
                        summary.push(format!("diameter: {} ({} BFS runs)", run.diameter, run.bfs_runs));
                        json!({ "diameter": run.diameter, "bfs_runs": run.bfs_runs, "formula": formula(Theorem::Diam, &params) })
                    }
                    Err(Error::Disconnected { components }) => {
                        summary.push(format!("diameter: infinite ({components} components)"));
                        json!({ "diameter": Value::Null, "components": components })
                    }
                    Err(e) => return Err(e.into()),
                };
                report.insert("diameter".into(), v);
            }
            Prop::Clique => {
                let c = solvers::clique_block_scan(&inst, a.budget)?;
                let ok = verify::is_clique(g, &c.witness);
                if !ok {
                    failures.push("clique witness".to_string());
                }
                export_ids(export, "clique.json", &to_u64(&c.witness))?;
                summary.push(format!("clique: {} (witness verified {ok})", c.size));
                report.insert(
                    "clique".into(),
                    json!({ "size": c.size, "method": c.method, "verified": ok, "formula": formula(Theorem::Clique, &params) }),
                );
            }
            Prop::Alpha => {
                let lower = solvers::alpha_lower_cells(&inst, a.budget)?;
                let upper = solvers::alpha_upper_cellsum(&inst, a.budget, BudgetPolicy::Substitute)?;
                let ok = verify::is_independent(g, &lower.witness);
                if !ok {
                    failures.push("independent set witness".to_string());
                }
                export_ids(export, "independent.json", &to_u64(&lower.witness))?;
                summary.push(format!(
                    "alpha: {} <= alpha <= {} (witness verified {ok}, upper exact {})",
                    lower.value,
                    upper.value,
                    upper.is_exact_computation()
                ));
                report.insert(
                    "alpha".into(),
                    json!({
                        "lower": lower.value,
                        "upper": upper.value,
                        "upper_exact": upper.is_exact_computation(),
                        "verified": ok,
                        "formula": formula(Theorem::Alpha, &params),
                    }),
                );
            }
            Prop::Chi => {
                let b = solvers::chromatic_sandwich(&inst, a.budget)?;
                let ok = verify::is_proper_coloring(g, &b.coloring.assignment);
                if !ok {
                    failures.push("coloring".to_string());
                }
                export_ids(export, "coloring.json", &to_u64(&b.coloring.assignment))?;
                summary.push(format!(
                    "chi: {} <= chi <= {} (coloring verified {ok})",
                    b.lower, b.upper
                ));
                report.insert(
                    "chi".into(),
                    json!({
                        "lower": b.lower,
                        "upper": b.upper,
                        "clique_lower": b.clique_lower,
                        "independence_lower": b.independence_lower,
                        "dsatur_colors": b.dsatur_colors,
                        "palette_colors": b.palette_colors,
                        "verified": ok,
                        "formula": formula(Theorem::Chi, &params),
                    }),
                );
            }
            Prop::Ham => {
                let opts = HamOptions {
                    restarts: a.restarts,
                    mode: if a.strict_splice {
                        SpliceMode::AlternateEdgesOnly
                    } else {
                        SpliceMode::Permissive
                    },
                    seed: derive(params.seed, Stream::Hamilton),
                    skip_empty: true,
                };
                let v = match hamilton::hamilton_constructive(&inst, &opts) {
                    Ok(cert) => {
                        let ok = hamilton::verify_hamilton(&inst, &cert.order);
                        let discipline = hamilton::check_channel_discipline(&inst, &cert);
                        if !ok {
                            failures.push("hamilton cycle".to_string());
                        }
                        export_ids(export, "hamilton.json", &cert.order)?;
                        summary.push(format!(
                            "hamilton: cycle found (verified {ok}, channel discipline {discipline}, {} splices)",
                            cert.stats.splices
                        ));
                        json!({ "found": true, "verified": ok, "channel_discipline": discipline, "stats": cert.stats })
                    }
                    Err(f) => {
                        summary.push(format!("hamilton: construction failed: {f}"));
                        json!({ "found": false, "failure": f })
                    }
                };
                report.insert("hamilton".into(), v);
            }
        }
    }

    let mut certs = Vec::new();
    for cert_arg in &a.check_cert {
        let (kind, ok) = check_certificate(&inst, cert_arg)?;
        summary.push(format!("certificate {kind}: {}", if ok { "valid" } else { "INVALID" }));
        if !ok {
            failures.push(format!("certificate {cert_arg}"));
        }
        certs.push(json!({ "kind": kind, "path": cert_arg.split_once('=').map(|x| x.1), "valid": ok }));
    }
    if !certs.is_empty() {
        report.insert("certificates".into(), Value::Array(certs));
    }
    report.insert("failures".into(), json!(failures));

    if let Some(path) = &a.out {
        let mut w = writer(Some(path))?;
        serde_json::to_writer_pretty(&mut w, &Value::Object(report))?;
        writeln!(w)?;
        w.flush()?;
    }
    for line in &summary {
        println!("{line}");
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(format!("verification failed: {}", failures.join(", "))).into())
    }
}

fn dedup(props: &[Prop]) -> Vec<Prop> {
    let mut out = Vec::new();
    for &p in props {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn check_certificate(inst: &GnrpInstance, arg: &str) -> anyhow::Result<(String, bool)> {
    let (kind, path) = arg
        .split_once('=')
        .ok_or_else(|| Usage(format!("--check-cert expects KIND=PATH, got `{arg}`")))?;
    let f = File::open(path).with_context(|| format!("opening {path}"))?;
    let ids = gio::read_ids(BufReader::new(f))?;
    let g = inst.graph();
    let n = g.n() as u64;
    let in_range = |ids: &[u64]| ids.iter().all(|&v| v < n);
    let as_usize = |ids: &[u64]| ids.iter().map(|&v| v as usize).collect::<Vec<_>>();
    let distinct = |ids: &[u64]| {
        let mut s = ids.to_vec();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    };
    let ok = match kind {
        "clique" => in_range(&ids) && distinct(&ids) && verify::is_clique(g, &as_usize(&ids)),
        "independent" => in_range(&ids) && distinct(&ids) && verify::is_independent(g, &as_usize(&ids)),
        "coloring" => ids.len() == g.n() && verify::is_proper_coloring(g, &as_usize(&ids)),
        "hamilton" => {
            in_range(&ids) && {
                let order: Vec<u32> = ids.iter().map(|&v| v as u32).collect();
                hamilton::verify_hamilton(inst, &order)
            }
        }
        other => bail!(Usage(format!("unknown certificate kind `{other}`"))),
    };
    Ok((kind.to_string(), ok))
}

/// `a:b:step` (inclusive, values rounded to 12 decimals) or `v1,v2,...`.
fn parse_grid(s: &str) -> anyhow::Result<Vec<f64>> {
    let num = |t: &str| -> anyhow::Result<f64> {
        t.trim()
            .parse::<f64>()
            .map_err(|_| anyhow!(Usage(format!("bad grid number `{t}` in `{s}`"))))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (num(a)?, num(b)?, num(step)?);
            if step.is_nan() || step <= 0.0 || b < a {
                bail!(Usage(format!("grid `{s}` needs a <= b and step > 0")));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize;
            Ok((0..=count)
                .map(|i| ((a + i as f64 * step) * 1e12).round() / 1e12)
                .collect())
        }
        [_] => s.split(',').map(num).collect(),
        _ => bail!(Usage(format!("bad grid `{s}`"))),
    }
}

fn cmd_sweep(a: SweepArgs) -> anyhow::Result<()> {
    let theorem: Theorem = a.theorem.parse()?;
    let (kind, grid_arg) = match (&a.c, &a.k, &a.p, &a.grid) {
        (Some(s), ..) => (GridKind::C, s),
        (_, Some(s), ..) => (GridKind::K, s),
        (_, _, Some(s), _) => (GridKind::P, s),
        (.., Some(s)) => (theorem.default_grid_kind(), s),
        _ => bail!(Usage("one of --c, --k, --p or --grid is required".into())),
    };
    let grid = ParamGrid::new(kind, parse_grid(grid_arg)?);
    let mut cfg = SweepConfig::new(theorem, a.n, a.r, grid, a.trials, a.seed);
    cfg.budget = a.budget;
    cfg.ham_restarts = a.restarts;
    cfg.ham_mode = if a.strict_splice {
        SpliceMode::AlternateEdgesOnly
    } else {
        SpliceMode::Permissive
    };
    cfg.p1 = a.p1;
    cfg.wall_times = a.wall_times;
    cfg.batch = a.batch;
    cfg.validate()?;

    let out = experiments::run_sweep(&cfg)?;
    let mut csv = writer(a.out.as_deref())?;
    experiments::write_csv(&out.records, &mut csv)?;
    csv.flush()?;
    drop(csv);
    if let Some(path) = &a.summary {
        let mut w = writer(Some(path))?;
        experiments::write_summary_json(&out.summary, &mut w)?;
        w.flush()?;
    }

    // With the CSV on stdout the human summary goes to stderr.
    let mut human: Box<dyn Write> = if a.out.is_some() {
        Box::new(io::stdout())
    } else {
        Box::new(io::stderr())
    };
    writeln!(
        human,
        "{} sweep: n={} r={} trials={} seed={}",
        theorem, a.n, a.r, a.trials, a.seed
    )?;
    for pt in &out.summary.points {
        let head = format!(
            "  point {} value={} p={}",
            pt.point,
            pt.value,
            pt.p.map_or("-".into(), |p| format!("{p:.6}"))
        );
        if let Some(why) = &pt.infeasible {
            writeln!(human, "{head} infeasible: {why}")?;
            continue;
        }
        let mut line = head;
        if let Some(s) = &pt.success {
            line += &format!(" success {}/{} ({:.3})", s.successes, s.trials, s.fraction);
        }
        for q in &pt.quantities {
            if let Some(m) = q.mean {
                line += &format!(" {}={:.4}", q.quantity.name(), m);
                if let Some(rm) = q.ratio_mean {
                    line += &format!("[ratio {rm:.4}]");
                }
            }
        }
        writeln!(human, "{line}")?;
    }
    if theorem.indicator().is_some() {
        match out.summary.threshold_crossing(0.5) {
            Ok(x) => writeln!(human, "  crossing of 0.5 at {x:.4}")?,
            Err(e) => writeln!(human, "  {e}")?,
        }
    }
    for note in &out.summary.notes {
        writeln!(human, "  note: {note}")?;
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, workers: usize) -> anyhow::Result<()> {
    let ids = gnrp_acceptance::parse_selection(&a.only).map_err(|e| Usage(e.to_string()))?;
    let workers = if workers == 0 { par::current_workers() } else { workers };
    let reports = gnrp_acceptance::run_suite(&ids, workers, a.rerun_workers, |r| {
        print!("{}", r.render());
        let _ = io::stdout().flush();
    })?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("summary: {passed} of {} criteria passed", reports.len());
    if passed == reports.len() {
        Ok(())
    } else {
        Err(CheckFailed(format!("{} criteria failed", reports.len() - passed)).into())
    }
}
