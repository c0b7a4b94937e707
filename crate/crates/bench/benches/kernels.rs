use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;

use qcluster::grid::{Gaussian, GridSpec};
use qcluster::intertwiner::{Intertwiner, KernelConvention, KernelSpec};
use qcluster::quantum::QuantumMutation;
use qcluster::special::{phi, QdilogCache, QuadratureConfig};
use qcluster::symbolic::tori::{compose_word, parse_word, Family};
use qcluster::Seed;

fn a2() -> Seed {
    Seed::from_matrix(vec![vec![0, 1], vec![-1, 0]], vec![1, 1]).unwrap()
}

fn special(c: &mut Criterion) {
    let cfg = QuadratureConfig::default();
    c.bench_function("phi direct", |b| {
        b.iter(|| phi(black_box(Complex64::new(0.7, 0.4)), 1.0, &cfg).unwrap())
    });
    let cache = QdilogCache::shared(1.0).unwrap();
    c.bench_function("phi cached", |b| b.iter(|| cache.phi(black_box(-1.3))));
}

fn symbolic(c: &mut Criterion) {
    let w = parse_word("m1,m2,m1,m2,m1,s(1 2)").unwrap();
    c.bench_function("pentagon A-map", |b| {
        b.iter(|| compose_word(&a2(), black_box(&w), Family::A).unwrap())
    });
    let s = Seed::from_matrix(vec![vec![0, 3], vec![-1, 0]], vec![1, 3]).unwrap();
    c.bench_function("quantum mutation", |b| b.iter(|| QuantumMutation::new(black_box(&s), 0)));
}

fn intertwiner(c: &mut Criterion) {
    let spec = GridSpec::uniform(2, 12.0, 256).unwrap();
    let ks = KernelSpec::new(&a2(), &2.into(), 1.0, KernelConvention::PaperGhat).unwrap();
    let f = Gaussian::isotropic(2, 1.0).sample(&spec).unwrap();
    c.bench_function("kernel table 256x256", |b| {
        b.iter(|| Intertwiner::new(ks.clone(), &spec).unwrap())
    });
    let op = Intertwiner::new(ks, &spec).unwrap();
    c.bench_function("apply K 256x256", |b| b.iter(|| op.apply(black_box(&f)).unwrap()));
}

criterion_group!(benches, special, symbolic, intertwiner);
criterion_main!(benches);
