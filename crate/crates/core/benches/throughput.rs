use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use slide_scale::document::{sample_table, DEFAULT_SAMPLE_COUNT};
use slide_scale::scale::{build_scale, build_scale_with, catalog_scale, ScaleSpec};
use slide_scale::{Execution, SlideRuleModel};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn specs() -> Vec<ScaleSpec> {
    vec![
        catalog_scale("D", 250.0).unwrap(),
        catalog_scale("S", 250.0).unwrap(),
        ScaleSpec::parse("phi", "Phi(x)", "-inf:inf", 100.0).unwrap(),
        ScaleSpec::parse("cubic", "cbrt(1-x^3)", "[-2:2]", 60.0).unwrap(),
    ]
}

fn scale_building(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_scale");
    for spec in specs() {
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, &spec.name), &spec, |b, s| {
                b.iter(|| build_scale_with(black_box(s), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn sample_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_table");
    for spec in specs() {
        let s = build_scale(&spec).unwrap();
        for (mode, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(mode, &spec.name), &s, |b, s| {
                b.iter(|| sample_table(black_box(s), DEFAULT_SAMPLE_COUNT, exec))
            });
        }
    }
    group.finish();
}

fn batch_compute(c: &mut Criterion) {
    let b = |code: &str| build_scale(&catalog_scale(code, 250.0).unwrap()).unwrap();
    let m = SlideRuleModel::new(vec![b("D"), b("A")], vec![b("C")]).unwrap();
    let pairs: Vec<(f64, f64)> = (0..10_000)
        .map(|i| {
            let x = 1.0 + (i % 97) as f64 * 0.09;
            (x, 1.0 + (i % 89) as f64 / 89.0 * (9.9 / x - 1.0))
        })
        .collect();
    let mut group = c.benchmark_group("compute_batch");
    for (mode, exec) in MODES {
        group.bench_function(mode, |bch| bch.iter(|| m.compute_batch("D", "C", "A", black_box(&pairs), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, scale_building, sample_tables, batch_compute);
criterion_main!(benches);
