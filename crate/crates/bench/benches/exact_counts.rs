use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use meander_core::combinatorics::{
    catalan, count_exact, ratio_sequence, zeilberger_residual, CountTable,
};

fn bench_exact_counts(c: &mut Criterion) {
    c.bench_function("catalan_500", |b| b.iter(|| catalan(black_box(500))));

    c.bench_function("count_exact_100_0", |b| {
        b.iter(|| count_exact(black_box(100), 0))
    });

    c.bench_function("count_table_40", |b| {
        b.iter(|| CountTable::new(black_box(40)))
    });

    c.bench_function("zeilberger_residual_100", |b| {
        b.iter(|| zeilberger_residual(black_box(100)))
    });

    c.bench_function("ratio_sequence_200", |b| {
        b.iter(|| ratio_sequence(black_box(200)))
    });
}

criterion_group!(benches, bench_exact_counts);
criterion_main!(benches);
