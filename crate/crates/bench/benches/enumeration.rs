use adlv_bench::enumeration_instances;
use adlv_core::enumerate::search_all;
use adlv_core::{dim_formula, enumerate_charts, summarize};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_summarize(c: &mut Criterion) {
    let mut group = c.benchmark_group("summarize");
    for inst in enumeration_instances() {
        group.bench_with_input(BenchmarkId::from_parameter(inst.label), &inst, |b, inst| {
            b.iter(|| summarize(black_box(&inst.mu), &inst.datum).unwrap())
        });
    }
    group.finish();
}

fn bench_materialize(c: &mut Criterion) {
    let mut group = c.benchmark_group("materialize");
    group.sample_size(20);
    for inst in enumeration_instances().into_iter().take(4) {
        group.bench_with_input(BenchmarkId::from_parameter(inst.label), &inst, |b, inst| {
            b.iter(|| {
                enumerate_charts(black_box(&inst.mu), &inst.datum)
                    .unwrap()
                    .charts
                    .len()
            })
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let inst = &enumeration_instances()[3];
    c.bench_function("search_all/d2_h4", |b| {
        b.iter(|| search_all(black_box(&inst.mu), &inst.datum).unwrap().len())
    });
}

fn bench_formula(c: &mut Criterion) {
    let mut group = c.benchmark_group("formula");
    for inst in enumeration_instances() {
        let nu = inst.datum.newton_point();
        group.bench_with_input(BenchmarkId::from_parameter(inst.label), &inst, |b, inst| {
            b.iter(|| dim_formula(black_box(&inst.mu), &nu).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_summarize,
    bench_materialize,
    bench_search,
    bench_formula
);
criterion_main!(benches);
