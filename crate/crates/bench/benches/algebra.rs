use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use leavitt_bench::{arc, dense_element, growth_fixtures, reduction_fixture};
use leavitt_core::families;
use leavitt_core::growth::{GrowthTable, DEFAULT_BUDGET};
use leavitt_core::lpa::Normalizer;
use leavitt_core::quiver::{relation_audit, Representation};
use leavitt_core::reduction::{complete_reduction, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for (name, g) in [("toeplitz", arc(families::toeplitz())), ("qD4", arc(families::q_disk(2)))] {
        let n = Normalizer::new(&g).unwrap();
        let a = dense_element(&g);
        group.bench_function(name, |b| b.iter(|| n.normalize(black_box(&a)).unwrap()));
    }
    group.finish();
}

fn growth(c: &mut Criterion) {
    let mut group = c.benchmark_group("growth");
    for (name, g) in growth_fixtures() {
        group.bench_with_input(BenchmarkId::new(name, 16), &g, |b, g| {
            b.iter(|| GrowthTable::compute(g, 16, DEFAULT_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduction");
    for n in [4, 16, 64] {
        let g = arc(reduction_fixture(n));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| complete_reduction(g, &Strategy::NameOrder).unwrap())
        });
    }
    group.finish();
}

fn quiver(c: &mut Criterion) {
    let g = arc(families::q_sphere_even(3));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rep = Representation::random(&g, 3, &mut rng).unwrap();
    c.bench_function("quiver_audit/qS6", |b| b.iter(|| relation_audit(black_box(&rep)).unwrap()));
}

criterion_group!(benches, normalize, growth, reduction, quiver);
criterion_main!(benches);
