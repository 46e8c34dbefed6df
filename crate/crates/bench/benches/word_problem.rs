use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use overlap_bench::word_pairs;
use overlap_core::{equivalent, presets, PresentationIndex};

fn bench_equivalent(c: &mut Criterion) {
    for (name, pres) in [("p2", presets::p2()), ("p4", presets::p4())] {
        let idx = PresentationIndex::new(pres).unwrap();
        let mut group = c.benchmark_group(format!("equivalent/{name}"));
        group.sample_size(20);
        for shift in 12..=16 {
            let len = 1usize << shift;
            let (u, v, neq) = word_pairs(&idx, len, shift as u64);
            group.throughput(Throughput::Elements(len as u64));
            group.bench_with_input(BenchmarkId::new("yes", len), &len, |b, _| {
                b.iter(|| equivalent(&idx, black_box(&u), black_box(&v)).unwrap())
            });
            if let Some(w) = &neq {
                group.bench_with_input(BenchmarkId::new("no", len), &len, |b, _| {
                    b.iter(|| equivalent(&idx, black_box(&u), black_box(w)).unwrap())
                });
            }
        }
        group.finish();
    }
}

criterion_group!(benches, bench_equivalent);
criterion_main!(benches);
