//! Compare the rayon-backed sweeps against the sequential fallbacks on the
//! workloads where the crate actually fans out. Build with the default
//! `parallel` feature so both code paths are present.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hinv::classify::{classify_subspace, is_invariant, w_uniformity, ClassifyOptions};
use hinv::lattice::enumerate_all_subspaces;
use hinv::marked::admissible_tuples;
use hinv::operator::Operator;
use hinv::{sweep, Caps, PrimeField};

fn invariant_filter(c: &mut Criterion) {
    let field = PrimeField::new(3).unwrap();
    let f = Operator::nilpotent_blocks(field, &[1, 1, 2]).unwrap();
    let all = enumerate_all_subspaces(field, 4, 100_000).unwrap();
    let mut group = c.benchmark_group("invariant_filter_gf3_n4");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let kept = sweep::filter(black_box(all.clone()), |s| {
                is_invariant(&f, s).unwrap()
            });
            black_box(kept.len())
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let kept = sweep::filter_seq(black_box(all.clone()), |s| {
                is_invariant(&f, s).unwrap()
            });
            black_box(kept.len())
        })
    });
    group.finish();
}

fn classification_map(c: &mut Criterion) {
    let field = PrimeField::new(2).unwrap();
    let f = Operator::nilpotent_blocks(field, &[1, 3, 2]).unwrap();
    let caps = Caps::default();
    let invariant: Vec<_> = sweep::filter_seq(
        enumerate_all_subspaces(field, 6, 100_000).unwrap(),
        |s| is_invariant(&f, s).unwrap(),
    );
    let opts = ClassifyOptions::default();
    let mut group = c.benchmark_group("classify_invariant_subspaces_gf2_n6");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let reports = sweep::map(black_box(&invariant), |x| {
                classify_subspace(&f, x, &caps, opts).unwrap().hyperinvariant
            });
            black_box(reports.len())
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let reports = sweep::map_seq(black_box(&invariant), |x| {
                classify_subspace(&f, x, &caps, opts).unwrap().hyperinvariant
            });
            black_box(reports.len())
        })
    });
    group.finish();
}

fn uniformity_sweep(c: &mut Criterion) {
    let field = PrimeField::new(2).unwrap();
    let f = Operator::nilpotent_blocks(field, &[1, 1, 2]).unwrap();
    let caps = Caps::exhaustive();
    let tuples = admissible_tuples(&[1, 1, 2]);
    let mut group = c.benchmark_group("uniformity_sweep_gf2_t112");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| {
            let rows = sweep::map(black_box(&tuples), |r| {
                w_uniformity(&f, r, &caps).unwrap().uniform()
            });
            black_box(rows.len())
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            let rows = sweep::map_seq(black_box(&tuples), |r| {
                w_uniformity(&f, r, &caps).unwrap().uniform()
            });
            black_box(rows.len())
        })
    });
    group.finish();
}

criterion_group!(benches, invariant_filter, classification_map, uniformity_sweep);
criterion_main!(benches);
