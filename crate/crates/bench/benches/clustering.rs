use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use herdscope_core::graph::{clustering_stats, global_clustering, local_clustering, triangle_count};
use herdscope_core::SocialGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gnp(n: usize, p: f64, seed: u64) -> SocialGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (0..n).map(|i| format!("u{i:05}")).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(p) {
                edges.push((names[a].clone(), names[b].clone()));
            }
        }
    }
    SocialGraph::from_parts(names, edges)
}

fn bench_clustering(c: &mut Criterion) {
    let mut group = c.benchmark_group("clustering");
    for &(n, p) in &[(200, 0.1), (1000, 0.02), (5000, 0.004)] {
        let g = gnp(n, p, n as u64);
        let id = format!("n{n}_m{}", g.edge_count());
        group.bench_with_input(BenchmarkId::new("triangles", &id), &g, |b, g| {
            b.iter(|| triangle_count(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("global", &id), &g, |b, g| {
            b.iter(|| global_clustering(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("local_all", &id), &g, |b, g| {
            b.iter(|| {
                g.nodes()
                    .map(|v| local_clustering(g, v).unwrap())
                    .sum::<f64>()
            })
        });
        group.bench_with_input(BenchmarkId::new("stats", &id), &g, |b, g| {
            b.iter(|| clustering_stats(black_box(g)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_clustering);
criterion_main!(benches);
