use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cubicdom::bundled;
use cubicdom::graph::{boost_girth, maximum_matching, random_cubic};
use cubicdom::labeling::run;

fn pipeline(c: &mut Criterion) {
    let rules = bundled::example10();
    let g = boost_girth(&random_cubic(20_000, 1).unwrap(), 9, 1, 100_000).unwrap().graph;
    let mut group = c.benchmark_group("n=20000");
    group.sample_size(10);
    group.bench_function("random cubic", |b| b.iter(|| random_cubic(black_box(20_000), 2).unwrap()));
    group.bench_function("boost girth 9", |b| {
        let g0 = random_cubic(20_000, 2).unwrap();
        b.iter(|| boost_girth(black_box(&g0), 9, 2, 100_000).unwrap())
    });
    group.bench_function("maximum matching", |b| b.iter(|| maximum_matching(black_box(&g))));
    group.bench_function("labeling run", |b| b.iter(|| run(black_box(&g), &rules, 5, 3, Some(610)).unwrap()));
    group.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
