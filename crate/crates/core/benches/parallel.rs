use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mdcore::par::{self, Execution};
use mdcore::rated::random::{random_graph, RandomSpec};
use mdcore::rated::{self, fixtures};
use mdcore::rational::{q, qi, Q};
use mdcore::thickening::{decompose_with, extend_batch, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn filtration(c: &mut Criterion) {
    let mut group = c.benchmark_group("filtration");
    for (name, g) in [("rates_123", fixtures::rates_123()), ("self_glued", fixtures::self_glued())] {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, name), &g, |b, g| {
                b.iter(|| rated::filtration(black_box(g), 3, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn hurewicz_batch(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let graphs: Vec<_> = (0..8).map(|_| random_graph(&mut rng, &RandomSpec::default())).collect();
    let mut group = c.benchmark_group("hurewicz_batch");
    for (mode, exec) in MODES {
        group.bench_function(mode, |b| {
            b.iter(|| par::map(exec, &graphs, |g| rated::hurewicz_check(g, &g.max_rate())))
        });
    }
    group.finish();
}

fn thickening(c: &mut Criterion) {
    let k = SimplicialComplex::new(
        vec![vec![qi(1), qi(1)], vec![qi(0), qi(0)], vec![qi(2), qi(0)], vec![qi(2), qi(2)], vec![qi(0), qi(2)]],
        vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 1]],
    )
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let points: Vec<Vec<Q>> = (0..500)
        .map(|_| vec![q(rng.gen_range(0..=2048), 1024), q(rng.gen_range(0..=2048), 1024)])
        .collect();
    let g = |t: usize, nu: &[Q]| vec![nu.iter().fold(qi(t as i64), |a, l| a + l * l)];
    let mut group = c.benchmark_group("thickening");
    for (mode, exec) in MODES {
        group.bench_function(BenchmarkId::new("extend_batch", mode), |b| {
            b.iter(|| extend_batch(&k, g, black_box(&points), exec))
        });
        group.bench_function(BenchmarkId::new("decompose", mode), |b| b.iter(|| decompose_with(black_box(&k), exec)));
    }
    group.finish();
}

criterion_group!(benches, filtration, hurewicz_batch, thickening);
criterion_main!(benches);
