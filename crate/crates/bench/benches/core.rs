use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use supertriple::cohomology::{cohomology, verify_complex};
use supertriple::operators::operator_space;
use supertriple::{adjoint_representation, verify_axioms, OperatorKind};
use supertriple_bench::{named_systems, random_systems};

fn axioms(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_axioms");
    for t in named_systems() {
        g.bench_with_input(BenchmarkId::from_parameter(t.name()), &t, |b, t| b.iter(|| verify_axioms(black_box(t))));
    }
    let batch = random_systems(0x5eed, 16, 4);
    g.bench_function("random16", |b| b.iter(|| batch.iter().filter(|t| verify_axioms(t).all_hold()).count()));
    g.finish();
}

fn operators(c: &mut Criterion) {
    let mut g = c.benchmark_group("operator_space");
    for t in named_systems() {
        for kind in [OperatorKind::Der, OperatorKind::GDer, OperatorKind::Centroid] {
            g.bench_with_input(BenchmarkId::new(kind.name(), t.name()), &t, |b, t| b.iter(|| operator_space(black_box(t), kind, 1)));
        }
    }
    g.finish();
}

fn complex(c: &mut Criterion) {
    let mut g = c.benchmark_group("cohomology");
    g.sample_size(10);
    for t in named_systems() {
        let rep = adjoint_representation(&t);
        g.bench_with_input(BenchmarkId::new("verify_complex", t.name()), &t, |b, t| b.iter(|| verify_complex(t, &rep).unwrap()));
        g.bench_with_input(BenchmarkId::new("h3", t.name()), &t, |b, t| b.iter(|| cohomology(t, &rep, 3).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, axioms, operators, complex);
criterion_main!(benches);
