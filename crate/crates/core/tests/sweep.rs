use gnrp_core::experiments::{run_sweep, write_csv, GridKind, ParamGrid, SweepConfig, Theorem};
use gnrp_core::par;

fn csv_of(cfg: &SweepConfig, workers: usize) -> String {
    let out = par::with_workers(workers, || run_sweep(cfg).unwrap());
    let mut buf = Vec::new();
    write_csv(&out.records, &mut buf).unwrap();
    String::from_utf8(buf).unwrap()
}

#[test]
fn sweeps_do_not_depend_on_pool_size_or_batching() {
    for theorem in [Theorem::Connectivity, Theorem::Clique, Theorem::Diam] {
        let grid = ParamGrid::new(GridKind::P, vec![0.3, 0.8]);
        let mut cfg = SweepConfig::new(theorem, 400, 0.12, grid, 5, 99);
        let a = csv_of(&cfg, 1);
        cfg.batch = 2;
        let b = csv_of(&cfg, 3);
        assert_eq!(a, b, "{theorem}");
    }
}

#[test]
fn trials_at_one_point_differ() {
    let cfg = SweepConfig::new(Theorem::Degree, 200, 0.1, ParamGrid::new(GridKind::P, vec![0.5]), 6, 1);
    let out = run_sweep(&cfg).unwrap();
    let mut seeds: Vec<u64> = out.records.iter().map(|r| r.seed).collect();
    seeds.sort_unstable();
    seeds.dedup();
    assert_eq!(seeds.len(), 6);
}
