use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use starfree::biclique::{count_biclique_with, sweep_lower_bounds_with, DpOptions};
use starfree::count::{brute_force_count_with, count_star_free_with, CountOptions};
use starfree::shearer::{upper_bound_b_with, BoundOptions};
use starfree::{Execution, ForbidParams, Graph};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn counting(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    group.sample_size(10);
    let p23 = ForbidParams::new(2, 3).unwrap();
    let p24 = ForbidParams::new(2, 4).unwrap();
    let k44 = Graph::complete_bipartite(4, 4).unwrap();
    let k55 = Graph::complete_bipartite(5, 5).unwrap();
    for (name, exec) in MODES {
        let opts = CountOptions { exec, ..CountOptions::default() };
        group.bench_with_input(BenchmarkId::new("brute K44 (2,3)", name), &opts, |b, o| {
            b.iter(|| brute_force_count_with(&k44, &p23, o).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("backtrack K55 (2,4)", name), &opts, |b, o| {
            b.iter(|| count_star_free_with(&k55, &p24, o).unwrap())
        });
    }
    group.finish();
}

fn biclique(c: &mut Criterion) {
    let mut group = c.benchmark_group("biclique");
    group.sample_size(10);
    let p33 = ForbidParams::new(3, 3).unwrap();
    let p24 = ForbidParams::new(2, 4).unwrap();
    for (name, exec) in MODES {
        for canonical in [true, false] {
            let opts = DpOptions { exec, canonical, ..DpOptions::default() };
            let label = if canonical { "canonical K66 (3,3)" } else { "ordered K66 (3,3)" };
            group.bench_with_input(BenchmarkId::new(label, name), &opts, |b, o| {
                b.iter(|| count_biclique_with(6, 6, &p33, o).unwrap())
            });
        }
        let opts = DpOptions { exec, ..DpOptions::default() };
        group.bench_with_input(BenchmarkId::new("sweep (2,4) to 12", name), &opts, |b, o| {
            b.iter(|| sweep_lower_bounds_with(&p24, 12, o).unwrap())
        });
    }
    group.finish();
}

fn upper(c: &mut Criterion) {
    let mut group = c.benchmark_group("upper");
    group.sample_size(10);
    let p = ForbidParams::new(30, 3).unwrap();
    for (name, exec) in MODES {
        let opts = BoundOptions { exec, ..BoundOptions::default() };
        group.bench_with_input(BenchmarkId::new("r=30 t=3", name), &opts, |b, o| {
            b.iter(|| upper_bound_b_with(&p, o).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, counting, biclique, upper);
criterion_main!(benches);
