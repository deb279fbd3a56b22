use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::ThreadPool;
use singint_core::dcov::{permutation_test, DcovOptions, SampleMatrix};
use singint_core::rng::stream;
use singint_core::verify::{montecarlo_oracle, sweep};
use singint_core::{EvaluationPoint, KernelSpec, QuadratureConfig};

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let build = |n| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
    };
    vec![("sequential", build(1)), ("parallel", build(0))]
}

fn bench_sweep(c: &mut Criterion) {
    let config = QuadratureConfig::default();
    let grid: Vec<Complex64> = (1..16)
        .map(|k| Complex64::new(0.25 * k as f64, 0.0))
        .collect();
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(sweep(&[1, 2, 3, 5], &[1, 2], &grid, &config))))
        });
    }
    group.finish();
}

fn bench_montecarlo(c: &mut Criterion) {
    let config = QuadratureConfig::default();
    let spec = KernelSpec::real(3, 1, 1.5).unwrap();
    let x = EvaluationPoint::unit(3);
    let mut group = c.benchmark_group("montecarlo");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(montecarlo_oracle(&spec, &x, &config).unwrap())))
        });
    }
    group.finish();
}

fn bench_permutation(c: &mut Criterion) {
    let mut rng = stream(1, 0);
    let mut sample = |n: usize| {
        let v = (0..2 * n).map(|_| rng.sample(StandardNormal)).collect();
        SampleMatrix::new(n, 2, v).unwrap()
    };
    let (x, y) = (sample(200), sample(200));
    let opts = DcovOptions {
        permutations: 199,
        ..DcovOptions::default()
    };
    let mut group = c.benchmark_group("permutation_test");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(permutation_test(&x, &y, &opts).unwrap())))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_montecarlo, bench_permutation);
criterion_main!(benches);
