//! Benchmarks for the hot paths: log table construction, the two table
//! engines, and whole-family scans.

use costas_core::costas::{golomb_subfamily, welch_family};
use costas_core::ffield::{FieldSpec, LogTable};
use costas_core::xcorr::{
    cross_correlation_at, cross_correlation_table, family_max, pair_max,
};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn log_table_build(c: &mut Criterion) {
    let spec = FieldSpec::of_order(1 << 12).unwrap();
    let g = spec.smallest_primitive();
    c.bench_function("log_table_build_q4096", |b| {
        b.iter(|| LogTable::build(black_box(&spec), black_box(g)).unwrap())
    });
}

fn table_engines(c: &mut Criterion) {
    let family = welch_family(59).unwrap();
    let (f1, f2) = (&family[0], &family[1]);
    c.bench_function("table_histogram_w59_pair", |b| {
        b.iter(|| cross_correlation_table(black_box(f1), black_box(f2)).unwrap())
    });
    // The per-entry oracle the histogram engine is checked against; kept
    // here so the speed gap between the two routes stays visible.
    c.bench_function("table_definitional_w59_pair", |b| {
        b.iter(|| {
            let w = f1.n() as i64 - 1;
            let mut max = 0;
            for u in -w..=w {
                for v in -w..=w {
                    max = max.max(cross_correlation_at(f1, f2, u, v).unwrap());
                }
            }
            black_box(max)
        })
    });
    c.bench_function("pair_max_w59", |b| {
        b.iter(|| pair_max(black_box(f1), black_box(f2)).unwrap())
    });
}

fn family_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group("family_scans");
    group.sample_size(10);

    let w101 = welch_family(101).unwrap();
    group.bench_function("welch_p101", |b| {
        b.iter(|| family_max(black_box(&w101)).unwrap())
    });

    let spec = FieldSpec::of_order(64).unwrap();
    let g64 = golomb_subfamily(&spec, spec.smallest_primitive()).unwrap();
    group.bench_function("golomb_sub_q64", |b| {
        b.iter(|| family_max(black_box(&g64)).unwrap())
    });

    group.finish();
}

criterion_group!(benches, log_table_build, table_engines, family_scans);
criterion_main!(benches);
