use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use synthdata::numerics::{
    beta_quantile, cholesky, erf, normal_cdf, normal_quantile, reg_inc_beta, Matrix, RngStream,
};

fn special_functions(c: &mut Criterion) {
    let xs: Vec<f64> = (0..1000).map(|i| -5.0 + i as f64 * 0.01).collect();
    let ps: Vec<f64> = (1..1000).map(|i| i as f64 / 1000.0).collect();
    c.bench_function("erf_x1000", |b| {
        b.iter(|| xs.iter().map(|&x| erf(black_box(x))).sum::<f64>())
    });
    c.bench_function("normal_cdf_x1000", |b| {
        b.iter(|| xs.iter().map(|&x| normal_cdf(black_box(x))).sum::<f64>())
    });
    c.bench_function("normal_quantile_x999", |b| {
        b.iter(|| {
            ps.iter()
                .map(|&p| normal_quantile(black_box(p)).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("reg_inc_beta_x999", |b| {
        b.iter(|| {
            ps.iter()
                .map(|&x| reg_inc_beta(black_box(x), 5.0, 2.0).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("beta_quantile_x999", |b| {
        b.iter(|| {
            ps.iter()
                .map(|&p| beta_quantile(black_box(p), 5.0, 2.0).unwrap())
                .sum::<f64>()
        })
    });
}

fn rng_and_linalg(c: &mut Criterion) {
    c.bench_function("standard_normal_x10k", |b| {
        b.iter(|| {
            let mut s = RngStream::new(black_box(1));
            (0..10_000).map(|_| s.standard_normal()).sum::<f64>()
        })
    });
    let n = 32;
    let mut s = RngStream::new(2);
    let a = Matrix::from_vec(n, n, (0..n * n).map(|_| s.standard_normal()).collect()).unwrap();
    let mut spd = a.matmul(&a.transpose()).unwrap();
    for i in 0..n {
        spd.row_mut(i)[i] += n as f64;
        for j in 0..i {
            let v = spd[(i, j)];
            spd.row_mut(j)[i] = v;
        }
    }
    c.bench_function("cholesky_32", |b| {
        b.iter(|| cholesky(black_box(&spd)).unwrap())
    });
}

criterion_group!(benches, special_functions, rng_and_linalg);
criterion_main!(benches);
