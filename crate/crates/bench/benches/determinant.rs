use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quadfix::quadric::{corank_exact, det_by_formula};
use quadfix::{sweep, Config};
use quadfix_bench::{generic, PARTITIONS};

fn determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("det");
    group.sample_size(10);
    for parts in PARTITIONS {
        let g = generic(parts);
        group.bench_with_input(BenchmarkId::new("formula", parts), &g, |b, g| {
            b.iter(|| det_by_formula(black_box(g)))
        });
        if g.matrix().rows() <= 10 {
            group.bench_with_input(BenchmarkId::new("cofactor", parts), &g, |b, g| {
                b.iter(|| black_box(g.matrix()).det_cofactor().unwrap())
            });
            group.bench_with_input(BenchmarkId::new("bareiss", parts), &g, |b, g| {
                b.iter(|| black_box(g.matrix()).det_bareiss().unwrap())
            });
        }
    }
    group.finish();
}

fn corank(c: &mut Criterion) {
    let mut group = c.benchmark_group("corank_exact");
    group.sample_size(10);
    for parts in PARTITIONS {
        let g = generic(parts);
        group.bench_with_input(BenchmarkId::from_parameter(parts), &g, |b, g| {
            b.iter(|| corank_exact(black_box(g)))
        });
    }
    group.finish();
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let cfg = Config::default();
    for n in [5usize, 7] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sweep(n, &cfg, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, determinant, corank, sweeps);
criterion_main!(benches);
