use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use cubicdom::analysis::{analyze, bound};
use cubicdom::bundled;
use cubicdom::rules::{check_complete, check_correct};

fn analysis(c: &mut Criterion) {
    let example = bundled::example10();
    let main = bundled::main79();
    c.bench_function("analyze example10 K=5", |b| b.iter(|| bound(&analyze(black_box(&example), 5).unwrap())));
    c.bench_function("analyze main79 K=10000", |b| b.iter(|| bound(&analyze(black_box(&main), 10_000).unwrap())));
    c.bench_function("check main79", |b| {
        b.iter(|| check_correct(black_box(&main)).len() + check_complete(black_box(&main)).len())
    });
}

criterion_group!(benches, analysis);
criterion_main!(benches);
