use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trace_lab_bench::{random_family, random_uniform};
use trace_lab_core::hypergraph::{shadow_size, trace_value, vc_dimension, wp};
use trace_lab_core::oracle::{tau_exact, trace_value_exact, OracleBudget};

fn shatter_function(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_value");
    for n in [12, 16, 20] {
        let f = random_family(n, 200, 1);
        group.bench_with_input(BenchmarkId::new("bitset", n), &f, |b, f| {
            b.iter(|| trace_value(black_box(f), n / 2).unwrap())
        });
    }
    let f = random_family(12, 200, 1);
    group.bench_function("naive/12", |b| b.iter(|| trace_value_exact(black_box(&f), 6).unwrap()));
    group.finish();
}

fn shadows_and_density(c: &mut Criterion) {
    let f = random_uniform(24, 4, 2000, 2);
    c.bench_function("shadow_size/n24_k4_i2", |b| b.iter(|| shadow_size(black_box(&f), 2)));
    let g = random_uniform(18, 3, 300, 3);
    c.bench_function("wp/n18_k3_i9", |b| b.iter(|| wp(black_box(&g), 9).unwrap()));
    let h = random_family(14, 500, 4);
    c.bench_function("vc_dimension/n14", |b| b.iter(|| vc_dimension(black_box(&h)).unwrap()));
}

fn exact_tau(c: &mut Criterion) {
    let budget = OracleBudget::default();
    c.bench_function("tau_exact/4_10_3", |b| b.iter(|| tau_exact(4, black_box(10), 3, &budget).unwrap()));
    c.bench_function("tau_exact/5_12_4", |b| b.iter(|| tau_exact(5, black_box(12), 4, &budget).unwrap()));
}

criterion_group!(benches, shatter_function, shadows_and_density, exact_tau);
criterion_main!(benches);
