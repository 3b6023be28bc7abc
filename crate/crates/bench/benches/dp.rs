use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use redistrict::dp::{CombineStrategy, Count, MinCost, Mode};
use redistrict::{Builder, CostFilter, Prepared};
use redistrict_bench::balanced_grids;

fn bench_count(c: &mut Criterion) {
    let mut group = c.benchmark_group("count");
    group.sample_size(10);
    for (name, g, spec) in balanced_grids() {
        let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
        for strategy in [CombineStrategy::Direct, CombineStrategy::Transform] {
            let id = BenchmarkId::new(format!("{strategy:?}"), &name);
            group.bench_with_input(id, &p, |b, p| {
                b.iter(|| {
                    p.solve::<Count>(&spec, Mode::Auto, strategy)
                        .unwrap()
                        .count(CostFilter::Any)
                })
            });
        }
    }
    group.finish();
}

fn bench_optimize(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimize");
    group.sample_size(10);
    for (name, g, spec) in balanced_grids() {
        let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
        for mode in [Mode::Auto, Mode::General] {
            group.bench_with_input(BenchmarkId::new(mode.to_string(), &name), &p, |b, p| {
                b.iter(|| {
                    p.solve::<MinCost>(&spec, mode, CombineStrategy::Direct)
                        .unwrap()
                        .optimize()
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn bench_sample(c: &mut Criterion) {
    let (name, g, spec) = balanced_grids().swap_remove(2);
    let p = Prepared::new(&g, &spec, Builder::Sweep).unwrap();
    let t = p
        .solve::<Count>(&spec, Mode::Auto, CombineStrategy::Direct)
        .unwrap();
    let mut seed = 0;
    c.bench_function(&format!("sample/{name}"), |b| {
        b.iter(|| {
            seed += 1;
            t.sample(seed, CostFilter::Any).unwrap()
        })
    });
}

criterion_group!(benches, bench_count, bench_optimize, bench_sample);
criterion_main!(benches);
