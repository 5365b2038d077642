//! Data-parallel kernels on a one-thread pool against the full pool.
//! Built without the `parallel` feature both rows run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gnrp_core::generator::{build_rgg, sample_points};
use gnrp_core::graph::diameter_bounded;
use gnrp_core::hamilton::{hamilton_constructive, HamOptions};
use gnrp_core::solvers::{clique_block_scan, DEFAULT_BUDGET};
use gnrp_core::{generate, par, ModelParams};

fn pools() -> [(&'static str, usize); 2] {
    [("1-thread", 1), ("all-threads", 0)]
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);

    let points = sample_points(50_000, 1).unwrap();
    let dense = generate(&ModelParams::new(20_000, 0.03, 0.5, 7).unwrap()).unwrap();
    let sparse = generate(&ModelParams::new(5_000, 0.05, 0.6, 3).unwrap()).unwrap();
    let ham = generate(&ModelParams::new(10_000, 0.08, 0.99, 5).unwrap()).unwrap();

    for (label, workers) in pools() {
        group.bench_with_input(BenchmarkId::new("generate_n20000", label), &workers, |b, &w| {
            let params = ModelParams::new(20_000, 0.03, 0.5, 11).unwrap();
            b.iter(|| par::with_workers(w, || black_box(generate(&params).unwrap())))
        });
        group.bench_with_input(BenchmarkId::new("build_rgg_n50000", label), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || black_box(build_rgg(&points, 0.01).unwrap())))
        });
        group.bench_with_input(BenchmarkId::new("diameter_n5000", label), &workers, |b, &w| {
            b.iter(|| par::with_workers(w, || black_box(diameter_bounded(sparse.graph()).ok())))
        });
        group.bench_with_input(
            BenchmarkId::new("clique_block_scan_n20000", label),
            &workers,
            |b, &w| b.iter(|| par::with_workers(w, || black_box(clique_block_scan(&dense, DEFAULT_BUDGET).unwrap()))),
        );
        group.bench_with_input(BenchmarkId::new("hamilton_n10000", label), &workers, |b, &w| {
            let opts = HamOptions::default();
            b.iter(|| par::with_workers(w, || black_box(hamilton_constructive(&ham, &opts).is_ok())))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
