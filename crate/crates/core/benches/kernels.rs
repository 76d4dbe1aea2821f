//! Parallel kernels on Bertin's example against a one-thread pool.
//!
//! `cargo bench -p modinv --bench kernels`

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modinv::action::MatrixGroup;
use modinv::algebra::{Matrix, PrimeField};
use modinv::homology::free_resolution;
use modinv::invariants::{fundamental_invariants, presentation, FundamentalSet};
use modinv::Limits;
use rayon::ThreadPoolBuilder;

fn bertin_invariants() -> FundamentalSet {
    let f = PrimeField::new(2).unwrap();
    let g = MatrixGroup::closure(f, 4, &[Matrix::permutation(f, &[1, 2, 3, 0])], 100).unwrap();
    fundamental_invariants(&g, 12).unwrap()
}

fn kernels(c: &mut Criterion) {
    let limits = Limits::default();
    let fs = bertin_invariants();
    let p = presentation(&fs, &limits).unwrap();
    let pools = [
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
    ];

    let mut group = c.benchmark_group("bertin");
    group.sample_size(10);
    for (name, pool) in &pools {
        group.bench_with_input(BenchmarkId::new("invariants", name), pool, |b, pool| {
            b.iter(|| pool.install(bertin_invariants))
        });
        group.bench_with_input(BenchmarkId::new("presentation", name), pool, |b, pool| {
            b.iter(|| pool.install(|| presentation(&fs, &limits).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("resolution", name), pool, |b, pool| {
            b.iter(|| pool.install(|| free_resolution(&p, &limits).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, kernels);
criterion_main!(benches);
