use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use trace_lab_core::construct::{
    build_sparse_kk_extremal, build_trace_ub_family, verify_wp_upper, ConstructionSpec, WpMode,
};

fn sparse_kk(c: &mut Criterion) {
    let spec = ConstructionSpec::sparse_kk(4096, 1.2, 0.5, 4, 8).relaxed(true);
    c.bench_function("sparse_kk/build_n4096", |b| b.iter(|| build_sparse_kk_extremal(black_box(&spec)).unwrap()));
    let report = build_sparse_kk_extremal(&spec).unwrap();
    c.bench_function("sparse_kk/wp_sample_100", |b| {
        b.iter(|| verify_wp_upper(&report, WpMode::Sample { trials: 100 }, black_box(9)).unwrap())
    });
}

fn power_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_ub");
    group.sample_size(10);
    let spec = ConstructionSpec::trace_ub(1024, 2.0, 0.5);
    group.bench_function("build_n1024_r2", |b| b.iter(|| build_trace_ub_family(black_box(&spec)).unwrap()));
    let report = build_trace_ub_family(&spec).unwrap();
    group.bench_function("sample_100_windows", |b| {
        b.iter(|| report.family().sample_windows(512, 100, black_box(5)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sparse_kk, power_sets);
criterion_main!(benches);
