use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use qpi_bench::{factors, long_prefixes, text, Kind};
use qpi_core::Index;
use std::hint::black_box;

const SIZES: [usize; 3] = [1 << 10, 1 << 12, 1 << 14];
const BATCH: usize = 256;

fn min_cover(c: &mut Criterion) {
    let mut g = c.benchmark_group("min_cover");
    g.throughput(Throughput::Elements(BATCH as u64));
    for n in SIZES {
        for (name, kind) in [("binary", Kind::Binary), ("periodic", Kind::Periodic)] {
            let idx = Index::build(text(kind, n, 1)).unwrap();
            let fs = factors(n, BATCH, 2);
            g.bench_with_input(BenchmarkId::new(name, n), &fs, |b, fs| {
                b.iter(|| fs.iter().map(|&f| idx.min_cover(f).unwrap()).sum::<usize>())
            });
        }
    }
    g.finish();
}

fn min_cover_simple(c: &mut Criterion) {
    let mut g = c.benchmark_group("min_cover_simple");
    g.throughput(Throughput::Elements(BATCH as u64));
    for n in SIZES {
        let idx = Index::build(text(Kind::Periodic, n, 1)).unwrap();
        let fs = factors(n, BATCH, 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &fs, |b, fs| {
            b.iter(|| fs.iter().map(|&f| idx.min_cover_simple(f).unwrap()).sum::<usize>())
        });
    }
    g.finish();
}

fn all_covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("all_covers");
    g.throughput(Throughput::Elements(BATCH as u64));
    for n in SIZES {
        let idx = Index::build(text(Kind::Periodic, n, 1)).unwrap();
        let fs = long_prefixes(n, BATCH, 3);
        g.bench_with_input(BenchmarkId::from_parameter(n), &fs, |b, fs| {
            b.iter(|| {
                fs.iter()
                    .map(|&f| idx.all_covers(f).unwrap().progressions.len())
                    .sum::<usize>()
            })
        });
    }
    g.finish();
}

fn primitives(c: &mut Criterion) {
    let n = 1 << 14;
    let idx = Index::build(text(Kind::Binary, n, 1)).unwrap();
    let fs = factors(n, BATCH, 4);
    let mut g = c.benchmark_group("primitives");
    g.throughput(Throughput::Elements(BATCH as u64));
    g.bench_function("lcp", |b| {
        b.iter(|| fs.iter().map(|f| idx.lcp(f.i, f.j).unwrap()).sum::<usize>())
    });
    g.bench_function("borders", |b| {
        b.iter(|| {
            fs.iter()
                .map(|&f| idx.borders(f).unwrap().progressions.len())
                .sum::<usize>()
        })
    });
    g.bench_function("covered_pref", |b| {
        b.iter(|| {
            fs.iter()
                .map(|&f| idx.covered_pref(f.len().div_ceil(4), f).unwrap())
                .sum::<usize>()
        })
    });
    g.bench_function("is_cover", |b| {
        b.iter(|| fs.iter().filter(|&&f| idx.is_cover(black_box(1), f).unwrap()).count())
    });
    g.finish();
}

criterion_group!(benches, min_cover, min_cover_simple, all_covers, primitives);
criterion_main!(benches);
