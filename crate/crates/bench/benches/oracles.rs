use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use overlap_lab::oracles::{
    check_polynomial_divisibility, exhaustive_depth, rank_equality_holds, search_overlap,
};
use overlap_lab::ReducedRational;

fn witness_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_search");
    for (p, q) in [(1u64, 11u64), (1, 47), (1, 767), (17, 43)] {
        let t = ReducedRational::proper_reduced(p, q).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{p}/{q}")), &t, |b, &t| {
            b.iter(|| search_overlap(black_box(t), exhaustive_depth(t)).unwrap())
        });
    }
    group.finish();
}

fn divisibility(c: &mut Criterion) {
    c.bench_function("divisibility_3_8_l2", |b| {
        b.iter(|| check_polynomial_divisibility(black_box(3), black_box(8), 2).unwrap())
    });
}

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank_equality");
    for (p, q, ell) in [(1u64, 2u64, 1u32), (7, 13, 2), (17, 23, 3)] {
        group.bench_function(format!("{p}/{q} l={ell}"), |b| {
            b.iter(|| rank_equality_holds(black_box(p), black_box(q), ell).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, witness_search, divisibility, rank);
criterion_main!(benches);
