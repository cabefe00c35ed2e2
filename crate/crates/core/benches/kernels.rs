use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wqsym_core::charseries::{adams, eulerian_idempotent, identity_series};
use wqsym_core::qsym::lyndon_generator_report_with;
use wqsym_core::verify::{run_suite, SuiteConfig};
use wqsym_core::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn products(c: &mut Criterion) {
    let mut g = c.benchmark_group("outer product");
    let (f, h) = (adams(2, 4).component(4).clone(), eulerian_idempotent(1, 3).component(3).clone());
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "4x3"), &exec, |b, &exec| b.iter(|| black_box(f.outer_with(&h, exec))));
    }
    g.finish();

    let mut g = c.benchmark_group("internal product");
    let all5 = identity_series(5).component(5).clone();
    let e1 = eulerian_idempotent(1, 5).component(5).clone();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "degree 5"), &exec, |b, &exec| {
            b.iter(|| black_box(e1.internal_with(&all5, exec)))
        });
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let mut g = c.benchmark_group("series convolution");
    g.sample_size(10);
    let (x, y) = (identity_series(5), eulerian_idempotent(1, 5));
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "N=5"), &exec, |b, &exec| {
            b.iter(|| black_box(x.convolve_with(&y, exec)))
        });
    }
    g.finish();

    let mut g = c.benchmark_group("idempotent family");
    g.sample_size(10);
    let e: Vec<_> = (0..=4).map(|i| eulerian_idempotent(i, 4)).collect();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, "e_i * e_j, N=4"), &exec, |b, &exec| {
            b.iter(|| {
                for a in &e {
                    for bb in &e {
                        black_box(a.internal_with(bb, exec));
                    }
                }
            })
        });
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for (name, exec) in MODES {
        let cfg = SuiteConfig { degree: 5, cases: 100, exec, ..Default::default() };
        g.bench_with_input(BenchmarkId::new(name, "crucial"), &cfg, |b, cfg| {
            b.iter(|| black_box(run_suite("crucial", cfg).unwrap()))
        });
        g.bench_with_input(BenchmarkId::new(name, "generators 5"), &exec, |b, &exec| {
            b.iter(|| black_box(lyndon_generator_report_with(5, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, products, series, suites);
criterion_main!(benches);
