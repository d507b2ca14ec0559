use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use seqring::orbit::membership_on_trace;
use seqring::recurrence::guess_recurrence;
use seqring::sequence::fundamental_matrix;
use seqring::zeros::{decompose_zero_set, pv_period_lower_bound, DecomposeParams};
use seqring::{OrbitState, OrbitTrace, RegularFunction, Subvariety};
use seqring_bench::*;

fn bench_fundamental_matrix(c: &mut Criterion) {
    let mut g = c.benchmark_group("fundamental_matrix");
    for h in [500u64, 2000] {
        g.bench_with_input(BenchmarkId::new("fibonacci", h), &h, |b, &h| {
            b.iter(|| fundamental_matrix(&fibonacci_system(), black_box(h), None).unwrap())
        });
    }
    let sys = cubic_system();
    g.bench_function("cubic/500", |b| b.iter(|| fundamental_matrix(&sys, black_box(500), None).unwrap()));
    g.finish();
}

fn bench_decompose(c: &mut Criterion) {
    let params = DecomposeParams::default();
    let crafted = crafted_indicator(2000);
    let fib = fibonacci(2000);
    c.bench_function("decompose/crafted", |b| {
        b.iter(|| decompose_zero_set(black_box(&crafted), params).unwrap())
    });
    c.bench_function("decompose/fibonacci", |b| {
        b.iter(|| decompose_zero_set(black_box(&fib), params).unwrap())
    });
}

fn bench_guess(c: &mut Criterion) {
    let fib = fibonacci(59);
    let product = product_sequence(80);
    c.bench_function("guess/fibonacci", |b| {
        b.iter(|| guess_recurrence(0, black_box(fib.values()), 4, 2).unwrap())
    });
    c.bench_function("guess/product", |b| {
        b.iter(|| guess_recurrence(0, black_box(&product), 4, 2).unwrap())
    });
}

fn bench_orbit(c: &mut Criterion) {
    let sys = cubic_system();
    let x = OrbitState::identity(0, 3);
    let f = RegularFunction::parse("(z+1)*Z[1][2]*Z[3][3] - Z[2][1]^2*detZ^-1", 3).unwrap();
    c.bench_function("orbit/trace_500", |b| {
        b.iter(|| OrbitTrace::compute(&sys, black_box(&x), 500).unwrap())
    });
    let trace = OrbitTrace::compute(&sys, &x, 500).unwrap();
    c.bench_function("orbit/psi_500", |b| b.iter(|| trace.evaluate(black_box(&f)).unwrap()));
    let y = Subvariety::parse(&["Z[1][1]", "detZ - 2"], 3).unwrap();
    c.bench_function("orbit/membership_500", |b| {
        b.iter(|| membership_on_trace(&trace, black_box(&y)).unwrap())
    });
    c.bench_function("orbit/sigma_action", |b| b.iter(|| black_box(&f).sigma_action(&sys).unwrap()));
}

fn bench_period_bound(c: &mut Criterion) {
    let mut g = c.benchmark_group("period_bound");
    g.sample_size(10);
    g.bench_function("fibonacci/d1", |b| {
        b.iter(|| pv_period_lower_bound(&fibonacci_system(), 1, 2000, DecomposeParams::default()).unwrap())
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_fundamental_matrix,
    bench_decompose,
    bench_guess,
    bench_orbit,
    bench_period_bound
);
criterion_main!(benches);
