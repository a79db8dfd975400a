//! Series-engine benchmarks: Wick pipelines, logs and Bernoulli numbers.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use virtchi_core::{genfunc, trees};

fn bench_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    group.sample_size(10);

    group.bench_function("f_series_order_8", |b| {
        b.iter(|| genfunc::f_series(black_box(8)).unwrap())
    });
    group.bench_function("x_series_order_12", |b| {
        b.iter(|| genfunc::x_series(black_box(12)).unwrap())
    });
    group.bench_function("y_series_order_8", |b| {
        b.iter(|| trees::y_series(black_box(8)).unwrap())
    });
    group.bench_function("bernoulli_30", |b| {
        b.iter(|| genfunc::bernoulli(black_box(30)))
    });
    group.bench_function("rooted_gf_signed_cap_30", |b| {
        b.iter(|| trees::rooted_gf_signed(black_box(30)))
    });
    group.bench_function("renorm_check_order_4", |b| {
        b.iter(|| trees::renorm_check(black_box(4)).unwrap())
    });

    group.finish();
}

criterion_group!(benches, bench_series);
criterion_main!(benches);
