use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sheaf_core::classify::{cellularize, check_kernel};
use sheaf_core::funcat::{hocolim, holim, rhom};
use sheaf_core::kernel::convolve_finite;
use sheaf_core::random::Generator;
use sheaf_core::witness::{truncation_colimit, TowerFunctor};
use sheaf_core::{face_poset, Complex, Field, PFunctor, Subject};

fn octahedron() -> Arc<sheaf_core::Poset> {
    let mut facets = Vec::new();
    for x in ["x+", "x-"] {
        for y in ["y+", "y-"] {
            for z in ["z+", "z-"] {
                facets.push(vec![x.to_string(), y.to_string(), z.to_string()]);
            }
        }
    }
    Arc::new(face_poset("octahedron", &facets).unwrap())
}

fn limits(c: &mut Criterion) {
    let p = octahedron();
    let mut group = c.benchmark_group("octahedron");
    for field in [Field::F2, Field::Rational] {
        let k = PFunctor::constant(p.clone(), &Complex::unit(&field));
        group.bench_with_input(BenchmarkId::new("holim", &field), &k, |b, k| b.iter(|| holim(black_box(k)).unwrap()));
        group.bench_with_input(BenchmarkId::new("hocolim", &field), &k, |b, k| b.iter(|| hocolim(black_box(k)).unwrap()));
    }
    group.finish();
}

fn random_objects(c: &mut Criterion) {
    let mut g = Generator::new(3, Field::prime(101).unwrap());
    let p = Arc::new(g.poset(7, 0.35));
    let q = Arc::new(g.poset(4, 0.4));
    let f = g.functor(&p, 6);
    let h = g.functor(&p, 6);
    let k = g.kernel(&p, &q, 3);
    c.bench_function("rhom random 7", |b| b.iter(|| rhom(black_box(&f), black_box(&h)).unwrap()));
    c.bench_function("cellularize random 7", |b| b.iter(|| cellularize(Subject::Finite(black_box(&f))).unwrap()));
    c.bench_function("convolve 7x4", |b| b.iter(|| convolve_finite(black_box(&f), black_box(&k)).unwrap()));
    c.bench_function("check_kernel 7x4", |b| b.iter(|| check_kernel(black_box(&k)).unwrap()));
}

fn towers(c: &mut Criterion) {
    let k = Complex::unit(&Field::F2);
    let constant = TowerFunctor::constant(&k);
    let mut group = c.benchmark_group("truncation colimit");
    group.sample_size(10);
    for stages in [2usize, 3, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(stages), &stages, |b, &s| {
            b.iter(|| truncation_colimit(&constant, &k, s, s + 2).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, limits, random_objects, towers);
criterion_main!(benches);
