use std::hint::black_box;

use casimir_core::casimir::total_energy;
use casimir_core::modes::j_zero;
use casimir_core::quad::integrate_log_product;
use casimir_core::specfun::{log_ik_product, Order};
use criterion::{criterion_group, criterion_main, Criterion};

fn bessel(c: &mut Criterion) {
    let order = Order::new(20).unwrap();
    c.bench_function("log_ik_product l=20 y=7.3", |b| {
        b.iter(|| log_ik_product(order, black_box(7.3)))
    });
    c.bench_function("log_ik_product l=20 y=800", |b| {
        b.iter(|| log_ik_product(order, black_box(800.0)))
    });
}

fn zeros(c: &mut Criterion) {
    c.bench_function("j_zero l=3 n=40", |b| {
        b.iter(|| j_zero(black_box(3), black_box(40)))
    });
    c.bench_function("j_zero l=12 n=0", |b| {
        b.iter(|| j_zero(black_box(12), black_box(0)))
    });
}

fn quadrature(c: &mut Criterion) {
    let order = Order::new(20).unwrap();
    c.bench_function("integrate_log_product nu=20.5", |b| {
        b.iter(|| integrate_log_product(black_box(order), 1e-12))
    });
}

fn energy(c: &mut Criterion) {
    let mut group = c.benchmark_group("total_energy");
    group.sample_size(10);
    group.bench_function("l_max=40", |b| {
        b.iter(|| total_energy(black_box(1.0), 40, 1e-12))
    });
    group.finish();
}

criterion_group!(benches, bessel, zeros, quadrature, energy);
criterion_main!(benches);
