use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use crlab_bench::{conjugated_rank_one, conjugated_vk, dense};
use crlab_core::borel_search::{enumerate_invariant_spaces, search_max_dimension};
use crlab_core::commrank::max_commutator_rank;
use crlab_core::triangularize::triangularize_rank_one;
use crlab_core::verify::structure_check;

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    for n in [4, 8, 16] {
        let m = dense(n, 1000, n as u64);
        group.bench_with_input(BenchmarkId::new("rational", n), &m, |b, m| {
            b.iter(|| black_box(m).rank())
        });
        let fp = m.to_fp().unwrap();
        group.bench_with_input(BenchmarkId::new("fp", n), &fp, |b, m| {
            b.iter(|| black_box(m).rank())
        });
    }
    group.finish();
}

fn profile(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_commutator_rank");
    for n in [4, 6] {
        let v = conjugated_vk(n, 1, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| max_commutator_rank(black_box(v), 32, 0).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    group.bench_function("enumerate n=4", |b| {
        b.iter(|| enumerate_invariant_spaces(black_box(4)).unwrap())
    });
    for k in [0, 1, 2] {
        group.bench_with_input(BenchmarkId::new("n=4", k), &k, |b, &k| {
            b.iter(|| search_max_dimension(4, black_box(k), 32, 0).unwrap())
        });
    }
    group.finish();
}

fn triangularize(c: &mut Criterion) {
    let mut group = c.benchmark_group("triangularize_rank_one");
    for n in [3, 5] {
        let v = conjugated_rank_one(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &v, |b, v| {
            b.iter(|| triangularize_rank_one(black_box(v)).unwrap())
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let mut group = c.benchmark_group("structure_check");
    group.sample_size(10);
    let v = conjugated_vk(5, 2, 9);
    group.bench_function("v_k(5,2,1)", |b| {
        b.iter(|| structure_check(black_box(&v), 32, 0).unwrap())
    });
    group.finish();
}

criterion_group!(benches, rank, profile, search, triangularize, structure);
criterion_main!(benches);
