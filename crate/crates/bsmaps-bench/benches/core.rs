//! Timings of the main computational kernels.

use std::hint::black_box;

use bsmaps_core::catalog::{bowen_series, higher_bowen_series};
use bsmaps_core::dimension::{f_bs, f_hbs, lyapunov_bracket};
use bsmaps_core::moebius::from_turn;
use bsmaps_core::CircleHomeo;
use criterion::{criterion_group, criterion_main, Criterion};

fn circle_maps(c: &mut Criterion) {
    let bs = bowen_series(2).unwrap().map;
    let hbs = higher_bowen_series(4).unwrap().map;
    c.bench_function("markov check BS(2)", |b| {
        b.iter(|| black_box(&bs).check_markov().unwrap())
    });
    c.bench_function("minimize cfm(4)", |b| {
        b.iter(|| higher_bowen_series(black_box(4)).unwrap())
    });
    c.bench_function("evaluate hBS(4) x1000", |b| {
        b.iter(|| {
            (0..1000)
                .map(|s| hbs.evaluate_z(from_turn(s as f64 / 1000.0)).re)
                .sum::<f64>()
        })
    });
}

fn conjugacy(c: &mut Criterion) {
    let bs = bowen_series(2).unwrap().map;
    let phi = CircleHomeo::build(&bs, 30).unwrap();
    c.bench_function("phi eval depth 30", |b| {
        b.iter(|| phi.eval(black_box(0.123456)).unwrap())
    });
}

fn dimension(c: &mut Criterion) {
    let f = f_bs();
    c.bench_function("f_bs vertex set rank 6", |b| {
        b.iter(|| f.vertex_set(black_box(6)).unwrap())
    });
    let g = f_hbs();
    c.bench_function("f_hbs Lyapunov bracket rank 10", |b| {
        b.iter(|| lyapunov_bracket(&g, black_box(10)).unwrap())
    });
}

criterion_group!(benches, circle_maps, conjugacy, dimension);
criterion_main!(benches);
