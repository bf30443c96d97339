use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use corecut::dangling::enumerate_dangling;
use corecut::generators::{core_periphery_instance, sample_inhomogeneous, CorePeripherySpec, InhomogeneousSpec};
use corecut::spectral::{laplacian_matvec, smallest_eigenpairs, sweep_cut, LanczosOptions, LaplacianOperator};
use corecut::{Regularization, Scoring, Variant};
use corecut_bench::dangling_instance;

fn matvec(c: &mut Criterion) {
    let g = dangling_instance(0);
    let x: Vec<f64> = (0..g.node_count()).map(|i| (i as f64).sin()).collect();
    let tau = g.total_volume() / g.node_count() as f64;
    let mut group = c.benchmark_group("matvec");
    for (name, reg) in [
        ("vanilla", Regularization::vanilla()),
        ("edge-wise", Regularization::new(tau, Variant::EdgeWise).unwrap()),
        ("degree-only", Regularization::new(tau, Variant::DegreeOnly).unwrap()),
    ] {
        let op = LaplacianOperator::new(&g, reg).unwrap();
        group.bench_function(name, |b| b.iter(|| laplacian_matvec(&op, black_box(&x)).unwrap()));
    }
    group.finish();
}

fn eigensolve(c: &mut Criterion) {
    let g = dangling_instance(0);
    let tau = g.total_volume() / g.node_count() as f64;
    let mut group = c.benchmark_group("lanczos_k2");
    group.sample_size(20);
    for (name, reg) in [
        ("vanilla", Regularization::vanilla()),
        ("degree-only", Regularization::new(tau, Variant::DegreeOnly).unwrap()),
        ("edge-wise", Regularization::new(tau, Variant::EdgeWise).unwrap()),
    ] {
        let op = LaplacianOperator::new(&g, reg).unwrap();
        group.bench_function(name, |b| b.iter(|| smallest_eigenpairs(&op, LanczosOptions::new(2)).unwrap()));
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let g = dangling_instance(1);
    let op = LaplacianOperator::new(&g, Regularization::vanilla()).unwrap();
    let v = smallest_eigenpairs(&op, LanczosOptions::new(2)).unwrap().eigenvectors.swap_remove(1);
    let mut group = c.benchmark_group("sweep");
    group.bench_function("raw", |b| b.iter(|| sweep_cut(&g, Scoring::Raw, black_box(&v)).unwrap()));
    group.bench_function("regularized", |b| {
        b.iter(|| sweep_cut(&g, Scoring::Regularized { tau: 25.0 }, black_box(&v)).unwrap())
    });
    group.finish();
}

fn census(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_dangling");
    for n in [1000usize, 4000, 16000] {
        let g = sample_inhomogeneous(&InhomogeneousSpec::erdos_renyi(n, 1.5 / n as f64), 0).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| enumerate_dangling(g, 10, true).unwrap())
        });
    }
    group.finish();
}

fn generators(c: &mut Criterion) {
    let spec = CorePeripherySpec::desk_scale();
    let mut group = c.benchmark_group("generators");
    group.bench_function("core_periphery_desk", |b| b.iter(|| core_periphery_instance(&spec, black_box(3)).unwrap()));
    group.finish();
}

criterion_group!(benches, matvec, eigensolve, sweep, census, generators);
criterion_main!(benches);
