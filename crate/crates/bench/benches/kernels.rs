use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dmv_bench::{cross_polytope, lattice_polygon, two_triangles};
use dmv_core::dualvol::{dual_volume, dual_volume_function};
use dmv_core::families::genperm_dmv_closed_form;
use dmv_core::mixed::{
    dual_mixed_volume_z, generate_fine_subdivision, validate_mixed_subdivision,
    verify_subdivision_additivity, Lifting,
};

fn dual_volumes(c: &mut Criterion) {
    let mut g = c.benchmark_group("dual_volume_function");
    for k in [2, 4, 6] {
        let p = lattice_polygon(k);
        g.bench_with_input(BenchmarkId::new("polygon", k), &p, |b, p| {
            b.iter(|| dual_volume_function(black_box(p)).unwrap())
        });
    }
    for d in [3, 4] {
        let p = cross_polytope(d);
        g.bench_with_input(BenchmarkId::new("cross_polytope", d), &p, |b, p| {
            b.iter(|| dual_volume(black_box(p)).unwrap())
        });
    }
    g.finish();
}

fn mixed_volumes(c: &mut Criterion) {
    let (seq, sub) = two_triangles();
    c.bench_function("dual_mixed_volume_z/two_triangles", |b| {
        b.iter(|| dual_mixed_volume_z(black_box(&seq)).unwrap())
    });
    c.bench_function("validate/two_triangles", |b| {
        b.iter(|| validate_mixed_subdivision(black_box(&seq), black_box(&sub)).unwrap())
    });
    c.bench_function("additivity/two_triangles", |b| {
        b.iter(|| verify_subdivision_additivity(black_box(&seq), black_box(&sub)).unwrap())
    });
    c.bench_function("lifting/two_triangles", |b| {
        b.iter(|| generate_fine_subdivision(black_box(&seq), &Lifting::Seed(1)).unwrap())
    });
}

fn families(c: &mut Criterion) {
    c.bench_function("genperm_closed_form/4", |b| {
        b.iter(|| genperm_dmv_closed_form(black_box(4)).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(20);
    targets = dual_volumes, mixed_volumes, families
}
criterion_main!(kernels);
