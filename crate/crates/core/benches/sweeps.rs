//! Oracle sweeps, sequential against rayon-parallel. Without the `parallel`
//! feature both variants run sequentially.

use std::hint::black_box;

use congrkit::verify::{sweep_fmfn, sweep_fn, sweep_product, Selection};
use congrkit::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn product_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("principal T2xT2 all pairs");
    g.sample_size(10);
    let family = "T2xT2".parse().unwrap();
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(sweep_product(family, Selection::All, exec).unwrap()))
        });
    }
    g.finish();
}

fn matrix_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("principal F2@GF(3) 500 pairs");
    g.sample_size(10);
    let family = "F2@GF(3)".parse().unwrap();
    let selection = Selection::Sample {
        count: 500,
        seed: 1,
    };
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(sweep_fn(family, selection, exec).unwrap()))
        });
    }
    g.finish();
}

fn matrix_product_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("principal F2xF2@GF(2) 200 pairs");
    g.sample_size(10);
    let family = "F2xF2@GF(2)".parse().unwrap();
    let selection = Selection::Sample {
        count: 200,
        seed: 1,
    };
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(sweep_fmfn(family, selection, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, product_sweep, matrix_sweep, matrix_product_sweep);
criterion_main!(benches);
