//! Special functions and Cholesky checked against slow independent oracles.

use proptest::prelude::*;
use synthdata::numerics::{
    beta_quantile, cholesky, erf, erfc, ln_gamma, normal_cdf, normal_quantile, reg_inc_beta,
    Matrix, RngStream,
};
use synthdata_oracles as oracle;

const SHAPES: [f64; 4] = [0.5, 1.0, 2.0, 5.0];

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

#[test]
fn erf_matches_series_on_dense_grid() {
    let worst = grid(-4.0, 4.0, 1e-3)
        .into_iter()
        .map(|x| (erf(x) - oracle::erf_taylor(x)).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-9, "max |erf - series| = {worst:e}");
}

#[test]
fn erfc_tail_matches_quadrature() {
    let density = |t: f64| 2.0 / std::f64::consts::PI.sqrt() * (-t * t).exp();
    for x in grid(0.5, 8.0, 0.25) {
        let reference = oracle::tanh_sinh(&density, x, x + 12.0, 1e-15);
        let rel = (erfc(x) - reference).abs() / reference;
        assert!(rel < 1e-9, "erfc({x}) rel err {rel:e}");
    }
}

#[test]
fn normal_cdf_matches_midpoint_integration() {
    let xs = grid(-6.0, 6.0, 0.01);
    let reference = oracle::normal_cdf_midpoint(&xs, 1e-4);
    for (x, r) in xs.iter().zip(reference) {
        let err = (normal_cdf(*x) - r).abs();
        assert!(err < 1e-9, "Phi({x}) err {err:e}");
    }
}

#[test]
fn ln_gamma_matches_integral() {
    for x in grid(0.1, 20.0, 0.1) {
        let err = (ln_gamma(x).unwrap() - oracle::ln_gamma_integral(x)).abs();
        assert!(err < 1e-9, "lnGamma({x}) err {err:e}");
    }
}

#[test]
fn reg_inc_beta_matches_quadrature() {
    for &a in &SHAPES {
        for &b in &SHAPES {
            for x in grid(0.01, 0.99, 0.01) {
                let err =
                    (reg_inc_beta(x, a, b).unwrap() - oracle::beta_cdf_quadrature(x, a, b)).abs();
                assert!(err < 1e-9, "I_{x}({a},{b}) err {err:e}");
            }
        }
    }
}

fn probability_grid() -> Vec<f64> {
    let mut ps: Vec<f64> = (1..1000).map(|i| i as f64 / 1000.0).collect();
    for e in 3..=12 {
        let p = 10f64.powi(-e);
        ps.push(p);
        ps.push(1.0 - p);
    }
    ps
}

#[test]
fn normal_quantile_round_trips() {
    for p in probability_grid() {
        let q = normal_quantile(p).unwrap();
        let tail = p.min(1.0 - p);
        let err = (normal_cdf(q) - p).abs();
        assert!(
            err < 1e-7 * tail.max(1e-300) || err < 1e-15,
            "p={p} err {err:e}"
        );
    }
}

#[test]
fn normal_quantile_matches_bisection() {
    let phi = |x: f64| 0.5 * (1.0 + oracle::erf_taylor(x / std::f64::consts::SQRT_2));
    for p in [0.025, 0.1, 0.5, 0.8, 0.975, 0.999] {
        let reference = oracle::bisect(phi, p, -6.0, 6.0);
        assert!(
            (normal_quantile(p).unwrap() - reference).abs() < 1e-9,
            "p={p}"
        );
    }
    assert!((normal_quantile(0.975).unwrap() - 1.959_963_985).abs() < 1e-9);
}

#[test]
fn beta_quantile_round_trips() {
    for &a in &SHAPES {
        for &b in &SHAPES {
            for p in grid(0.001, 0.999, 0.001) {
                let x = beta_quantile(p, a, b).unwrap();
                let back = reg_inc_beta(x, a, b).unwrap();
                assert!(
                    (back - p).abs() < 1e-7,
                    "Beta({a},{b}) p={p} -> {x} -> {back}"
                );
            }
        }
    }
}

#[test]
fn beta_quantile_matches_bisection_on_quadrature() {
    let reference = oracle::bisect(|x| oracle::beta_cdf_quadrature(x, 2.0, 5.0), 0.9, 0.0, 1.0);
    assert!((beta_quantile(0.9, 2.0, 5.0).unwrap() - reference).abs() < 1e-9);
}

#[test]
fn erf_at_one() {
    assert!((erf(1.0) - 0.842_700_792_9).abs() < 1e-9);
}

/// Random SPD matrix `A A^T + n I` from a seeded stream.
fn random_spd(n: usize, seed: u64) -> Matrix {
    let mut s = RngStream::new(seed);
    let a = Matrix::from_vec(n, n, (0..n * n).map(|_| s.standard_normal()).collect()).unwrap();
    let mut m = a.matmul(&a.transpose()).unwrap();
    for i in 0..n {
        m.row_mut(i)[i] += n as f64;
    }
    // symmetrize exactly so rounding in the product cannot trip the symmetry check
    for i in 0..n {
        for j in 0..i {
            let v = m[(i, j)];
            m.row_mut(j)[i] = v;
        }
    }
    m
}

proptest! {
    #[test]
    fn cholesky_reconstructs(n in 1usize..12, seed in any::<u64>()) {
        let m = random_spd(n, seed);
        let l = cholesky(&m).unwrap();
        let scale = m.as_slice().iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
        prop_assert!(l.reconstruct().max_abs_diff(&m) <= 1e-10 * scale);
        for i in 0..n {
            prop_assert!(l.get(i, i) > 0.0);
            for j in i + 1..n {
                prop_assert_eq!(l.get(i, j), 0.0);
            }
        }
    }

    #[test]
    fn erf_is_odd_and_bounded(x in -30.0f64..30.0) {
        prop_assert_eq!(erf(-x), -erf(x));
        prop_assert!(erf(x).abs() <= 1.0);
        prop_assert!((erf(x) + erfc(x) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normal_cdf_is_monotone(x in -37.0f64..37.0, dx in 1e-6f64..1.0) {
        prop_assert!(normal_cdf(x) <= normal_cdf(x + dx));
    }

    #[test]
    fn incomplete_beta_reflects(x in 0.0f64..=1.0, a in 0.1f64..20.0, b in 0.1f64..20.0) {
        let lhs = reg_inc_beta(x, a, b).unwrap();
        let rhs = 1.0 - reg_inc_beta(1.0 - x, b, a).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&lhs));
    }

    #[test]
    fn beta_quantile_is_in_unit_interval(p in 0.0f64..=1.0, a in 0.2f64..10.0, b in 0.2f64..10.0) {
        let x = beta_quantile(p, a, b).unwrap();
        prop_assert!((0.0..=1.0).contains(&x));
    }
}
