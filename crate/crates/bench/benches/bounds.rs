use criterion::{black_box, criterion_group, criterion_main, Criterion};
use tempfile::TempDir;

use telepathy_core::bounds::case_split::type_graph;
use telepathy_core::bounds::{
    exact_alpha, greedy_clique_cover, subset_combinator, AlphaBudget, CombinatorEntry, CoverConfig,
};
use telepathy_core::pipeline::run_pipeline;
use telepathy_core::quantum::verify_protocol;
use telepathy_core::symmetry::case_types;
use telepathy_core::tables::PairCase;
use telepathy_core::{build_level_graph, check_certificate};

fn combinator(c: &mut Criterion) {
    let entries: Vec<CombinatorEntry> = PairCase::D10
        .reference_rows()
        .iter()
        .map(|r| CombinatorEntry { a: r.a, b: r.b })
        .collect();
    c.bench_function("combinator d10 rows", |b| {
        b.iter(|| subset_combinator(black_box(&entries), 2))
    });
}

fn cover(c: &mut Criterion) {
    let level = build_level_graph(16, 6).unwrap();
    let (u, v) = PairCase::D12.pair();
    let rep = case_types(PairCase::D12).unwrap()[0].representative;
    let g = type_graph(&level, u, v, rep).unwrap();
    c.bench_function("greedy cover d12 type", |b| {
        b.iter(|| greedy_clique_cover(black_box(&g), 0, 1))
    });
}

fn alpha(c: &mut Criterion) {
    let g = build_level_graph(8, 4).unwrap();
    c.bench_function("exact alpha level(8,4)", |b| {
        b.iter(|| exact_alpha(black_box(g.adjacency()), AlphaBudget::default()).unwrap())
    });
}

fn checker(c: &mut Criterion) {
    let dir = TempDir::new().unwrap();
    run_pipeline(4, dir.path(), CoverConfig::default()).unwrap();
    let mut group = c.benchmark_group("certificate");
    group.sample_size(20);
    group.bench_function("check", |b| b.iter(|| check_certificate(dir.path()).unwrap()));
    group.finish();
}

fn protocol(c: &mut Criterion) {
    let mut group = c.benchmark_group("quantum");
    group.sample_size(10);
    group.bench_function("verify n=4", |b| b.iter(|| verify_protocol(4, 0).unwrap()));
    group.finish();
}

criterion_group!(benches, combinator, cover, alpha, checker, protocol);
criterion_main!(benches);
