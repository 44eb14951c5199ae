//! Exact coefficient construction and the late-coefficient approximation.

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nicholson_core::exact::{coeff_b, coeff_b_comtet, coeff_b_lauwerier, coeff_d, GaussRational};
use nicholson_core::late::{inverse_factorial_approx, reference_row, REFERENCE_TABLE};

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("coefficient_construction");
    g.sample_size(10).measurement_time(Duration::from_secs(5));
    for n in [30usize, 60, 120] {
        g.bench_with_input(BenchmarkId::new("comtet", n), &n, |b, &n| b.iter(|| coeff_b_comtet(black_box(n))));
        // The Lauwerier route grows much faster (about 30 s at n = 120).
        if n <= 60 {
            g.bench_with_input(BenchmarkId::new("lauwerier", n), &n, |b, &n| b.iter(|| coeff_b_lauwerier(black_box(n))));
        }
    }
    g.finish();
}

fn evaluation(c: &mut Criterion) {
    // The memoised polynomials up to n = 210 are built once, outside timing.
    let _ = coeff_b(210);
    let _ = coeff_d(210);
    let kappa: GaussRational = "4+3i".parse().unwrap();
    let mut g = c.benchmark_group("coefficient_evaluation");
    for n in [100usize, 210] {
        g.bench_with_input(BenchmarkId::new("exact_gauss", n), &n, |b, &n| b.iter(|| coeff_b(n).eval_exact(black_box(&kappa))));
    }
    g.finish();
}

fn late(c: &mut Criterion) {
    let _ = coeff_b(200);
    let kappa: GaussRational = "2+2i".parse().unwrap();
    let mut g = c.benchmark_group("late_coefficients");
    g.sample_size(10);
    g.bench_function("inverse_factorial_n200_m100", |b| {
        b.iter(|| inverse_factorial_approx(200, black_box(&kappa), 100, 50).unwrap())
    });
    g.bench_function("table_row_n200", |b| b.iter(|| reference_row(black_box(REFERENCE_TABLE[3]), 50).unwrap()));
    g.finish();
}

criterion_group!(benches, construction, evaluation, late);
criterion_main!(benches);
