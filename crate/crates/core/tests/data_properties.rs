//! Dataset statistics against naive double-loop oracles, exhaustively on small
//! instances, plus invariance and round-trip properties.

use proptest::prelude::*;
use synthdata::data::{
    correlation_matrix, covariance_matrix, load_csv, spearman_matrix, write_csv, Dataset,
};
use synthdata::ks_statistic;
use synthdata_oracles as oracle;

const VALUES: [f64; 3] = [-1.0, 0.5, 2.0];
const TOL: f64 = 1e-12;

/// Every vector of length `n` over `VALUES`.
fn all_columns(n: usize) -> Vec<Vec<f64>> {
    let total = VALUES.len().pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let v = VALUES[code % VALUES.len()];
                    code /= VALUES.len();
                    v
                })
                .collect()
        })
        .collect()
}

fn is_constant(c: &[f64]) -> bool {
    c.iter().all(|&v| v == c[0])
}

fn dataset(cols: &[Vec<f64>]) -> Dataset {
    let names = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    Dataset::from_parts(names, cols.to_vec()).unwrap()
}

fn max_diff(m: &synthdata::Matrix, naive: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, row) in naive.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((m[(i, j)] - v).abs());
        }
    }
    worst
}

/// Runs `check` on every (first, second) column pair for each n in 2..=6, with
/// the third column cycling through the same enumeration so all three slots
/// see every vector.
fn for_each_instance(mut check: impl FnMut(&[Vec<f64>])) {
    for n in 2..=6 {
        let cols = all_columns(n);
        let mut third = 0;
        for a in &cols {
            for b in &cols {
                third = (third + 7) % cols.len();
                check(&[a.clone(), b.clone(), cols[third].clone()]);
            }
        }
    }
}

#[test]
fn covariance_matches_naive_exhaustively() {
    let mut count = 0;
    for_each_instance(|cols| {
        let got = covariance_matrix(&dataset(cols)).unwrap();
        let diff = max_diff(&got, &oracle::naive_covariance(cols));
        assert!(diff <= TOL, "{cols:?}: {diff:e}");
        count += 1;
    });
    assert!(count > 500_000);
}

#[test]
fn correlation_matches_naive_exhaustively() {
    for_each_instance(|cols| {
        let result = correlation_matrix(&dataset(cols));
        if cols.iter().any(|c| is_constant(c)) {
            assert!(result.is_err(), "{cols:?} should be degenerate");
            return;
        }
        let diff = max_diff(result.unwrap().matrix(), &oracle::naive_correlation(cols));
        assert!(diff <= TOL, "{cols:?}: {diff:e}");
    });
}

#[test]
fn spearman_matches_naive_exhaustively() {
    for_each_instance(|cols| {
        let result = spearman_matrix(&dataset(cols));
        if cols.iter().any(|c| is_constant(c)) {
            assert!(result.is_err());
            return;
        }
        let diff = max_diff(result.unwrap().matrix(), &oracle::naive_spearman(cols));
        assert!(diff <= TOL, "{cols:?}: {diff:e}");
    });
}

#[test]
fn ks_matches_naive_exhaustively() {
    for n1 in 1..=6 {
        for n2 in 1..=6 {
            for a in all_columns(n1) {
                for b in all_columns(n2) {
                    let got = ks_statistic(&a, &b).unwrap();
                    let want = oracle::naive_ks(&a, &b);
                    assert!((got - want).abs() <= TOL, "{a:?} {b:?}");
                }
            }
        }
    }
}

fn column(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, len)
}

proptest! {
    #[test]
    fn spearman_is_invariant_under_monotone_maps(
        (x, y) in (3usize..40).prop_flat_map(|n| (column(n), column(n)))
    ) {
        prop_assume!(!is_constant(&x) && !is_constant(&y));
        let base = spearman_matrix(&dataset(&[x.clone(), y.clone(), x.clone()])).unwrap();
        let ex: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        let cy: Vec<f64> = y.iter().map(|v| v * v * v).collect();
        let mapped = spearman_matrix(&dataset(&[ex.clone(), cy, ex])).unwrap();
        prop_assert!(base.max_abs_diff(&mapped).unwrap() <= TOL);
    }

    #[test]
    fn correlation_is_symmetric_with_unit_diagonal(
        cols in (3usize..30).prop_flat_map(|n| prop::collection::vec(column(n), 3))
    ) {
        prop_assume!(cols.iter().all(|c| !is_constant(c)));
        let m = correlation_matrix(&dataset(&cols)).unwrap();
        for i in 0..3 {
            prop_assert_eq!(m.get(i, i), 1.0);
            for j in 0..3 {
                prop_assert_eq!(m.get(i, j), m.get(j, i));
                prop_assert!(m.get(i, j).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn csv_round_trips_exactly(
        cols in (0usize..20).prop_flat_map(|n| prop::collection::vec(
            prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::ZERO, n), 3))
    ) {
        let d = dataset(&cols);
        let mut buf = Vec::new();
        write_csv(&d, &mut buf).unwrap();
        let back = load_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.names(), d.names());
        prop_assert_eq!(back.n_rows(), d.n_rows());
        for (x, y) in back.columns().iter().zip(d.columns()) {
            let xb: Vec<u64> = x.iter().map(|v| v.to_bits()).collect();
            let yb: Vec<u64> = y.iter().map(|v| v.to_bits()).collect();
            prop_assert_eq!(xb, yb);
        }
    }

    #[test]
    fn ks_is_symmetric_and_bounded(
        a in prop::collection::vec(-3.0f64..3.0, 1..50),
        b in prop::collection::vec(-3.0f64..3.0, 1..50),
    ) {
        let ab = ks_statistic(&a, &b).unwrap();
        prop_assert_eq!(ab, ks_statistic(&b, &a).unwrap());
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert_eq!(ks_statistic(&a, &a).unwrap(), 0.0);
    }
}
