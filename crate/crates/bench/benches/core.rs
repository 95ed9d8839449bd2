use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use overpart_core::overpartition::dk_table;
use overpart_core::partition::count_b_table;
use overpart_core::series::{overpartition_product, QSeries};
use overpart_core::RSequence;

fn series_product(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for order in [60, 200] {
        let euler = QSeries::euler(order);
        let inverse = euler.invert_unit().unwrap();
        group.bench_with_input(BenchmarkId::new("mul", order), &order, |b, _| {
            b.iter(|| black_box(&euler) * black_box(&inverse))
        });
        group.bench_with_input(BenchmarkId::new("invert", order), &order, |b, _| {
            b.iter(|| black_box(&euler).invert_unit().unwrap())
        });
    }
    group.bench_function("overpartition_product k=3 order 60", |b| {
        b.iter(|| overpartition_product(3, black_box(60), 60).unwrap())
    });
    group.finish();
}

fn recursion(c: &mut Criterion) {
    c.bench_function("R_j k=3 q_order 60 j_max 65", |b| {
        b.iter(|| RSequence::build(3, black_box(65), 60, 60).unwrap())
    });
}

fn counting(c: &mut Criterion) {
    c.bench_function("count_b dp n<=200", |b| b.iter(|| count_b_table(black_box(200), 4, 2).unwrap()));
    c.bench_function("D_k enumeration k=2 n<=22", |b| b.iter(|| dk_table(black_box(22), 22, 2).unwrap()));
}

criterion_group!(benches, series_product, recursion, counting);
criterion_main!(benches);
