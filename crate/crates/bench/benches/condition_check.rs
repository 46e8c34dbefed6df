use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use overlap_bench::wide_presentation;
use overlap_core::{condition_report, PresentationIndex};

fn bench_conditions(c: &mut Criterion) {
    let mut group = c.benchmark_group("condition_report");
    group.sample_size(20);
    for relations in [25, 50, 100, 200] {
        let pres = wide_presentation(relations, relations as u64);
        let total = pres.total_length();
        group.throughput(Throughput::Elements(total as u64));
        group.bench_with_input(BenchmarkId::from_parameter(total), &pres, |b, p| {
            b.iter(|| condition_report(black_box(p)))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("index_build");
    group.sample_size(20);
    for relations in [50, 100] {
        let pres = wide_presentation(relations, relations as u64);
        group.bench_with_input(
            BenchmarkId::from_parameter(pres.total_length()),
            &pres,
            |b, p| b.iter(|| PresentationIndex::new(black_box(p).clone()).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_conditions);
criterion_main!(benches);
