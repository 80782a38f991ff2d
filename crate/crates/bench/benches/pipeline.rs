use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use curlax_bench::{annulus_section, half_disc, torus_section};
use curlax_core::geomfields::{suite, SuiteOptions};
use curlax_core::gseig::{assemble, solve, solve_with_forms, SolverConfig};
use curlax_core::mesh2::triangulate;

criterion_group!(
    benches,
    bench_triangulate,
    bench_assemble,
    bench_solve,
    bench_criterion_geometry,
    bench_model_suite
);
criterion_main!(benches);

fn bench_triangulate(c: &mut Criterion) {
    let section = half_disc(0.05);
    c.bench_function("triangulate_half_disc_h0.05", |b| {
        b.iter(|| triangulate(black_box(&section), 0.05).unwrap());
    });
}

fn bench_assemble(c: &mut Criterion) {
    let mesh = triangulate(&torus_section(256), 0.05).unwrap();
    c.bench_function("assemble_torus_h0.05", |b| {
        b.iter(|| assemble(black_box(&mesh)));
    });
}

fn bench_solve(c: &mut Criterion) {
    let mesh = triangulate(&torus_section(256), 0.08).unwrap();
    let forms = assemble(&mesh);
    let config = SolverConfig::default();
    c.bench_function("solve_torus_h0.08", |b| {
        b.iter(|| solve_with_forms(black_box(&mesh), &forms, None, &config).unwrap());
    });
    let ball = triangulate(&half_disc(0.08), 0.08).unwrap();
    c.bench_function("solve_ball_h0.08", |b| {
        b.iter(|| solve(black_box(&ball), None, &config).unwrap());
    });
}

fn bench_criterion_geometry(c: &mut Criterion) {
    let section = annulus_section(2048);
    c.bench_function("criterion_annulus_2048", |b| {
        b.iter(|| black_box(&section).criterion(None).unwrap());
    });
}

fn bench_model_suite(c: &mut Criterion) {
    c.bench_function("model_space_suite", |b| {
        b.iter(|| suite(black_box(SuiteOptions::default())));
    });
}
