//! Sequential vs data-parallel comparisons for the per-vertex spread sweep
//! and the batched suite instances.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use chibound::constructions::{random_oriented, random_tournament};
use chibound::exec;
use chibound::patterns::{is_lambda_spread_seq, spread_violation_probe};
use chibound::solvers::chromatic_number;

fn bench_spread(c: &mut Criterion) {
    let mut group = c.benchmark_group("spread-check");
    for &n in &[40usize, 80] {
        let g = random_tournament(n, 7);
        group.bench_with_input(BenchmarkId::new("seq", n), &g, |b, g| {
            b.iter(|| is_lambda_spread_seq(g, 2).verdict)
        });
        group.bench_with_input(BenchmarkId::new("par", n), &g, |b, g| {
            b.iter(|| {
                exec::map_indices(g.vertex_count(), |v| spread_violation_probe(g, 2, v))
                    .into_iter()
                    .flatten()
                    .next()
                    .is_none()
            })
        });
    }
    group.finish();
}

fn bench_batch_chromatic(c: &mut Criterion) {
    let graphs: Vec<_> = (0..64u64)
        .map(|seed| random_oriented(12, 0.5, seed).unwrap())
        .collect();
    let mut group = c.benchmark_group("chromatic-batch");
    group.bench_function("seq", |b| {
        b.iter(|| {
            exec::map_indices_seq(graphs.len(), |i| chromatic_number(&graphs[i]).unwrap().0)
                .iter()
                .sum::<usize>()
        })
    });
    group.bench_function("par", |b| {
        b.iter(|| {
            exec::map_indices(graphs.len(), |i| chromatic_number(&graphs[i]).unwrap().0)
                .iter()
                .sum::<usize>()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_spread, bench_batch_chromatic);
criterion_main!(benches);
