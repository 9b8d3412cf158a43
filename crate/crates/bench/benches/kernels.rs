use std::hint::black_box;

use blaschke_core::bounds::{check_jensen_h1, check_schur_chain, Tolerances};
use blaschke_core::dilation::roundtrip;
use blaschke_core::linalg::{schur_decompose, trace_norm, NumericalRange, DEFAULT_ANGLES};
use blaschke_core::sampling::{
    atomic_measure, contraction_system, gaussian_matrix, instance_rng, matrix_pair, normalized_polynomial,
};
use blaschke_core::zeros::{
    zeros_via_argument_principle, zeros_via_l, zeros_via_numerator_roots, DEFAULT_MAX_DEPTH, DEFAULT_RADIUS,
};
use blaschke_core::{CauchyFunction, Complex64, ContractionSystem};
use criterion::{criterion_group, criterion_main, Criterion};

const SEED: u64 = 7;

fn linalg(c: &mut Criterion) {
    let a = gaussian_matrix(&mut instance_rng(SEED, 1, 0), 10, 10);
    c.bench_function("schur_decompose n=10", |b| b.iter(|| schur_decompose(black_box(&a)).unwrap()));
    c.bench_function("trace_norm n=10", |b| b.iter(|| trace_norm(black_box(&a))));
    let range = NumericalRange::new(&a, DEFAULT_ANGLES);
    let lambda = Complex64::new(5.0, 3.0);
    c.bench_function("numerical_range distance n=10", |b| b.iter(|| range.distance(black_box(lambda))));
}

fn zeros(c: &mut Criterion) {
    let sigma = atomic_measure(&mut instance_rng(SEED, 2, 0), 8);
    let s = ContractionSystem::from_measure(&sigma).unwrap();
    let f = CauchyFunction::shifted(sigma);
    c.bench_function("zeros_via_l 8 atoms", |b| b.iter(|| zeros_via_l(black_box(&s)).unwrap()));
    c.bench_function("zeros_via_numerator_roots 8 atoms", |b| {
        b.iter(|| zeros_via_numerator_roots(black_box(&f)).unwrap())
    });
    let mut group = c.benchmark_group("argument principle");
    group.sample_size(10);
    group.bench_function("8 atoms", |b| {
        b.iter(|| zeros_via_argument_principle(black_box(&f), DEFAULT_RADIUS, DEFAULT_MAX_DEPTH).unwrap())
    });
    group.finish();
}

fn checks(c: &mut Criterion) {
    let tols = Tolerances::default();
    let (a, l) = matrix_pair(&mut instance_rng(SEED, 3, 0), 10);
    c.bench_function("schur_chain n=10", |b| {
        b.iter(|| check_schur_chain(black_box(&a), black_box(&l), &tols).unwrap())
    });
    let s = contraction_system(&mut instance_rng(SEED, 4, 0), 5);
    c.bench_function("dilation roundtrip n<=5 N=10", |b| b.iter(|| roundtrip(black_box(&s), 10).unwrap()));
    let p = normalized_polynomial(&mut instance_rng(SEED, 5, 0), 8);
    c.bench_function("jensen chain degree<=8", |b| b.iter(|| check_jensen_h1(black_box(&p), &tols).unwrap()));
}

criterion_group!(benches, linalg, zeros, checks);
criterion_main!(benches);
