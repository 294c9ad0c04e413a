use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use braidfree::signed::{is_eliminable_bruteforce, is_eliminable_characterization, make_hill};
use braidfree::{criterion2, decide, Sign};
use braidfree_bench::fixtures;

fn bench_decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    for (name, m) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &m, |b, m| b.iter(|| decide(black_box(m))));
    }
    group.finish();
}

fn bench_criterion2(c: &mut Criterion) {
    let mut group = c.benchmark_group("criterion2");
    for (name, m) in fixtures().into_iter().filter(|(_, m)| m.is_balanced()) {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &m, |b, m| {
            b.iter(|| criterion2(black_box(m), false))
        });
    }
    group.finish();
}

fn bench_eliminability(c: &mut Criterion) {
    let hill = make_hill(7, Sign::Plus).expect("valid");
    c.bench_function("eliminable/bruteforce_hill_7", |b| b.iter(|| is_eliminable_bruteforce(black_box(&hill))));
    c.bench_function("eliminable/characterization_hill_7", |b| {
        b.iter(|| is_eliminable_characterization(black_box(&hill)))
    });
}

criterion_group!(benches, bench_decide, bench_criterion2, bench_eliminability);
criterion_main!(benches);
