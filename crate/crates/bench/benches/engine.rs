use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use relhoch::diagnostics::{hdim_upto, is_formally_smooth_bimodule, is_separable_bimodule};
use relhoch::homology::{bar_resolution, m_hochschild};
use relhoch::{fixtures, Bimodule, Field, Matrix, DEFAULT_DIM_CAP};

const Q: Field = Field::Rationals;

fn linear_algebra(c: &mut Criterion) {
    let m = Matrix::from_fn(Q, 40, 60, |i, j| Q.from_int(((i * 7 + j * j * 3) % 11) as i64 - 5));
    c.bench_function("rref 40x60", |b| b.iter(|| black_box(&m).rref()));
    c.bench_function("kernel 40x60", |b| b.iter(|| black_box(&m).kernel()));
}

fn diagnostics(c: &mut Criterion) {
    let fx3 = fixtures::fx3(Q);
    let fx4 = fixtures::fx4(Q);
    let fx5 = fixtures::fx5(Q);
    c.bench_function("separable fx5", |b| b.iter(|| is_separable_bimodule(black_box(&fx5))));
    c.bench_function("smooth fx4", |b| {
        b.iter(|| is_formally_smooth_bimodule(black_box(&fx4), DEFAULT_DIM_CAP))
    });
    c.bench_function("hdim fx3 nmax 3", |b| {
        b.iter(|| hdim_upto(black_box(&fx3), 3, DEFAULT_DIM_CAP))
    });
}

fn homology(c: &mut Criterion) {
    let fx4 = fixtures::fx4(Q);
    let b4 = Bimodule::regular(fx4.left_algebra().clone());
    c.bench_function("bar resolution fx4 depth 3", |b| {
        b.iter(|| bar_resolution(black_box(&fx4), 3, DEFAULT_DIM_CAP))
    });
    c.bench_function("hochschild fx4 n <= 2", |b| {
        b.iter(|| m_hochschild(black_box(&fx4), &b4, 2, DEFAULT_DIM_CAP))
    });
    let sum = fixtures::fx3(Q).direct_sum(&fixtures::fx3(Q)).expect("same algebras");
    c.bench_function("smooth fx3 + fx3", |b| {
        b.iter(|| is_formally_smooth_bimodule(black_box(&sum), DEFAULT_DIM_CAP))
    });
}

criterion_group! {
    name = engine;
    config = Criterion::default().sample_size(10);
    targets = linear_algebra, diagnostics, homology
}
criterion_main!(engine);
