//! Criterion timings for the dense kernels and the full estimator.
//! Sizes are chosen so a full run stays under a minute on one core.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nucnorm_bench::{gaussian_square, geometric_square};
use nucnorm_core::{householder_qr, matmul, rand_nn, svd_values, RandNNConfig};

fn bench_matmul(c: &mut Criterion) {
    let a = gaussian_square(256);
    let b = gaussian_square(256);
    c.bench_function("matmul 256x256", |bench| {
        bench.iter(|| matmul(black_box(&a), black_box(&b), false, false).unwrap())
    });
    c.bench_function("matmul 256x256 transposed-left", |bench| {
        bench.iter(|| matmul(black_box(&a), black_box(&b), true, false).unwrap())
    });
}

fn bench_qr(c: &mut Criterion) {
    let a = gaussian_square(256);
    let panel = a.block(0, 256, 0, 64);
    c.bench_function("householder_qr 256x64", |bench| {
        bench.iter(|| householder_qr(black_box(&panel)))
    });
}

fn bench_svd(c: &mut Criterion) {
    let a = geometric_square(128);
    c.bench_function("svd_values 128x128", |bench| {
        bench.iter(|| svd_values(black_box(&a)).unwrap())
    });
}

fn bench_rand_nn(c: &mut Criterion) {
    let a = geometric_square(256);
    let cfg = RandNNConfig {
        block_size: 32,
        power_rounds: 1,
        ..RandNNConfig::default()
    };
    c.bench_function("rand_nn 256x256 b=32 q=1", |bench| {
        bench.iter(|| rand_nn(black_box(&a), black_box(&cfg)).unwrap())
    });
}

criterion_group!(benches, bench_matmul, bench_qr, bench_svd, bench_rand_nn);
criterion_main!(benches);
