use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mixstate::metrics::estimate_expectations;
use mixstate::{build_preparation_circuit, eig_hermitian, fidelity, ginibre_density, run, DEFAULT_TOL};
use std::hint::black_box;

fn eigendecomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("eig_hermitian");
    for d in [4, 8, 16, 32] {
        let rho = ginibre_density(d, 1).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(d), &rho, |b, rho| {
            b.iter(|| eig_hermitian(black_box(rho), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn preparation(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_preparation_circuit");
    for d in [2, 4, 8, 16] {
        let rho = ginibre_density(d, 2).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(d), &rho, |b, rho| {
            b.iter(|| build_preparation_circuit(black_box(rho), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_and_trace");
    for d in [2, 4, 8, 16] {
        let bundle = build_preparation_circuit(&ginibre_density(d, 3).unwrap(), DEFAULT_TOL).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(d), &bundle, |b, bundle| {
            b.iter(|| bundle.prepared_state().unwrap())
        });
    }
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let a = ginibre_density(8, 4).unwrap();
    let b = ginibre_density(8, 5).unwrap();
    c.bench_function("fidelity/8", |bench| bench.iter(|| fidelity(black_box(&a), black_box(&b)).unwrap()));

    let bundle = build_preparation_circuit(&ginibre_density(4, 6).unwrap(), DEFAULT_TOL).unwrap();
    let state = run(&bundle.circuit).unwrap();
    c.bench_function("tomography_shots/4x1e4", |bench| {
        bench.iter(|| estimate_expectations(&state, &bundle.system_qubits, 10_000, 7).unwrap())
    });
}

criterion_group!(benches, eigendecomposition, preparation, simulation, metrics);
criterion_main!(benches);
