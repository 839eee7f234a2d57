use adlv_core::coweight::rat;
use adlv_core::{lattice_points_between, length_to_dom, pairing, RelCocharacter};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_pairing(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairing");
    for h in [7, 31, 127] {
        let upper = RelCocharacter::constant(rat(3, h as i64), h);
        let mut ints = vec![0i64; h];
        ints[h - 1] = 3;
        let lower = RelCocharacter::from_ints(&ints);
        group.bench_with_input(BenchmarkId::new("bracket", h), &h, |b, _| {
            b.iter(|| pairing(black_box(&upper), black_box(&lower)))
        });
        group.bench_with_input(BenchmarkId::new("grid_scan", h), &h, |b, _| {
            b.iter(|| lattice_points_between(black_box(&upper), black_box(&lower)).unwrap())
        });
    }
    group.finish();
}

fn bench_length(c: &mut Criterion) {
    let v: Vec<i64> = (0..64).map(|i| (i * 37) % 11 - 5).collect();
    c.bench_function("length_to_dom/64", |b| {
        b.iter(|| length_to_dom(black_box(&v)))
    });
}

criterion_group!(benches, bench_pairing, bench_length);
criterion_main!(benches);
