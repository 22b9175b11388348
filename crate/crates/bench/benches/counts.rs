use criterion::{criterion_group, criterion_main, Criterion};

use hypermono::brute::{self, ScanOptions};
use hypermono::exact;

fn formulas(c: &mut Criterion) {
    c.bench_function("hultman_row_40", |b| b.iter(|| exact::hultman_row(40)));
    c.bench_function("u_of_g_10", |b| b.iter(|| exact::u_of_g(10)));
    c.bench_function("reduced_genpoly_24", |b| {
        b.iter(|| exact::reduced_genpoly(24))
    });
}

fn scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("scans");
    group.sample_size(10);
    group.bench_function("count_by_cycles_m9_serial", |b| {
        b.iter(|| brute::count_by_cycles(9, &ScanOptions::serial()).unwrap())
    });
    group.bench_function("count_reduced_m10_serial", |b| {
        b.iter(|| brute::count_reduced(10, &ScanOptions::serial()).unwrap())
    });
    group.bench_function("count_reduced_m11_parallel", |b| {
        b.iter(|| brute::count_reduced(11, &ScanOptions::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, formulas, scans);
criterion_main!(benches);
