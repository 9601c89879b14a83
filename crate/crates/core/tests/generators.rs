//! Statistical behavior of the four closed-form generators.

use std::collections::HashSet;

use synthdata::data::{column_stats, correlation_matrix, spearman_matrix};
use synthdata::{
    gen_abm, gen_bootstrap, gen_copula, gen_multivariate, AbmConfig, BetaMarginal, BootstrapConfig,
    CopulaConfig, Dataset, MultivariateConfig, NoiseScale, PerformanceSource, ResampleMode,
};
use synthdata_oracles as oracle;

fn bits(d: &Dataset) -> Vec<u64> {
    d.columns().iter().flatten().map(|v| v.to_bits()).collect()
}

#[test]
fn multivariate_is_deterministic_in_seed() {
    let a = gen_multivariate(&MultivariateConfig::behavior_defaults(500, 9)).unwrap();
    let b = gen_multivariate(&MultivariateConfig::behavior_defaults(500, 9)).unwrap();
    let c = gen_multivariate(&MultivariateConfig::behavior_defaults(500, 10)).unwrap();
    assert_eq!(bits(&a), bits(&b));
    assert_ne!(bits(&a), bits(&c));
}

#[test]
fn multivariate_moments_match_targets() {
    let n = 100_000;
    let cfg = MultivariateConfig::behavior_defaults(n, 2024);
    let d = gen_multivariate(&cfg).unwrap();
    for (j, name) in cfg.labels.iter().enumerate() {
        let s = column_stats(&d, name).unwrap();
        let se = cfg.stds[j] / (n as f64).sqrt();
        assert!(
            (s.mean - cfg.means[j]).abs() < 4.0 * se,
            "{name} mean {}",
            s.mean
        );
        assert!(
            (s.std / cfg.stds[j] - 1.0).abs() < 0.02,
            "{name} std {}",
            s.std
        );
    }
    let diff = correlation_matrix(&d)
        .unwrap()
        .max_abs_diff(&cfg.target_corr)
        .unwrap();
    assert!(diff <= 0.03, "corr diff {diff}");
}

fn copula(n: usize, seed: u64, marginals: &[(f64, f64)]) -> Dataset {
    let mut cfg = CopulaConfig::behavior_defaults(n, seed);
    cfg.marginals = marginals
        .iter()
        .map(|&(alpha, beta)| BetaMarginal { alpha, beta })
        .collect();
    gen_copula(&cfg).unwrap()
}

#[test]
fn copula_marginals_are_beta() {
    let n = 100_000;
    let cfg = CopulaConfig::behavior_defaults(n, 5);
    let d = gen_copula(&cfg).unwrap();
    for (j, m) in cfg.marginals.iter().enumerate() {
        let col = d.column_at(j);
        assert!(col.iter().all(|v| (0.0..=1.0).contains(v)));
        let (a, b) = (m.alpha, m.beta);
        let mean = a / (a + b);
        let var = a * b / ((a + b).powi(2) * (a + b + 1.0));
        let got = oracle::mean(col);
        assert!(
            (got - mean).abs() < 4.0 * (var / n as f64).sqrt(),
            "col {j} mean {got}"
        );
    }
}

#[test]
fn copula_kendall_tau_follows_latent_correlation() {
    // For a Gaussian copula tau = 2/pi * asin(rho), about 0.590 at rho = 0.8.
    let expected = 2.0 / std::f64::consts::PI * 0.8f64.asin();
    for marginals in [[(2.0, 2.0); 3], [(5.0, 2.0); 3], [(2.0, 5.0); 3]] {
        let d = copula(3000, 77, &marginals);
        let tau = oracle::kendall_tau(d.column_at(0), d.column_at(1));
        assert!((tau - expected).abs() < 0.03, "{marginals:?}: tau {tau}");
    }
}

#[test]
fn copula_ranks_do_not_depend_on_marginals() {
    let base = spearman_matrix(&copula(5000, 3, &[(2.0, 2.0); 3])).unwrap();
    for marginals in [[(5.0, 2.0); 3], [(2.0, 5.0); 3]] {
        let other = spearman_matrix(&copula(5000, 3, &marginals)).unwrap();
        assert!(base.max_abs_diff(&other).unwrap() < 1e-9);
    }
}

fn correlated_source(n: usize, seed: u64) -> Dataset {
    gen_multivariate(&MultivariateConfig::behavior_defaults(n, seed)).unwrap()
}

#[test]
fn joint_bootstrap_without_noise_draws_source_rows() {
    let source = correlated_source(50, 1);
    let cfg = BootstrapConfig {
        noise: NoiseScale::Absolute(0.0),
        mode: ResampleMode::Joint,
        ..BootstrapConfig::new(400, 8)
    };
    let out = gen_bootstrap(&source, &cfg).unwrap();
    let key = |row: Vec<f64>| row.iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    let available: HashSet<Vec<u64>> = source.rows().map(key).collect();
    for i in 0..out.n_rows() {
        assert!(
            available.contains(&key(out.row(i))),
            "row {i} not in source"
        );
    }
    assert_eq!(out.names(), source.names());
    assert_eq!(out.n_rows(), 400);
}

#[test]
fn independent_bootstrap_draws_from_each_column() {
    let source = correlated_source(30, 4);
    let cfg = BootstrapConfig {
        noise: NoiseScale::Absolute(0.0),
        ..BootstrapConfig::new(200, 8)
    };
    let out = gen_bootstrap(&source, &cfg).unwrap();
    for j in 0..source.n_cols() {
        for v in out.column_at(j) {
            assert!(source.column_at(j).contains(v));
        }
    }
}

#[test]
fn bootstrap_modes_control_correlation() {
    let source = correlated_source(2000, 11);
    let rho = correlation_matrix(&source).unwrap();
    let independent = gen_bootstrap(&source, &BootstrapConfig::new(10_000, 12)).unwrap();
    assert!(
        correlation_matrix(&independent)
            .unwrap()
            .max_abs_off_diagonal()
            <= 0.05
    );
    let joint_cfg = BootstrapConfig {
        noise: NoiseScale::Absolute(0.0),
        mode: ResampleMode::Joint,
        ..BootstrapConfig::new(10_000, 12)
    };
    let joint = gen_bootstrap(&source, &joint_cfg).unwrap();
    assert!(
        correlation_matrix(&joint)
            .unwrap()
            .max_abs_diff(&rho)
            .unwrap()
            <= 0.05
    );
}

#[test]
fn bootstrap_noise_widens_spread() {
    let source = correlated_source(1000, 2);
    let cfg = BootstrapConfig {
        noise: NoiseScale::FractionOfStd(0.5),
        mode: ResampleMode::Joint,
        ..BootstrapConfig::new(50_000, 3)
    };
    let out = gen_bootstrap(&source, &cfg).unwrap();
    for name in source.names() {
        let s = column_stats(&source, name).unwrap().std;
        let o = column_stats(&out, name).unwrap().std;
        // var(x + e) = var(x) (1 + 0.25)
        assert!((o / s - 1.25f64.sqrt()).abs() < 0.03, "{name}: {o} vs {s}");
    }
}

fn fixed_score(p: f64, n: usize, seed: u64) -> Dataset {
    let cfg = AbmConfig {
        performance_source: PerformanceSource::Uniform { lo: p, hi: p },
        ..AbmConfig::new(n, seed)
    };
    gen_abm(&cfg, None).unwrap()
}

#[test]
fn abm_outputs_stay_in_range() {
    let cfg = AbmConfig {
        sigma: 0.8,
        ..AbmConfig::new(20_000, 6)
    };
    let d = gen_abm(&cfg, None).unwrap();
    assert!(d
        .columns()
        .iter()
        .flatten()
        .all(|v| (0.0..=100.0).contains(v)));
    let scores = d.column("PerformanceScore").unwrap();
    assert!(scores.iter().all(|v| (40.0..=95.0).contains(v)));
}

#[test]
fn abm_metric_moments() {
    let d = fixed_score(50.0, 10_000, 1);
    let s = column_stats(&d, "TeamEngagement").unwrap();
    assert!(
        (s.mean - 50.0).abs() < 1.0 && (s.std - 10.0).abs() < 1.0,
        "{s:?}"
    );
    // E[min(N(1, 0.1), 1)] = 1 - 0.1 / sqrt(2 pi)
    let expected = 100.0 * (1.0 - 0.1 / (2.0 * std::f64::consts::PI).sqrt());
    let d = fixed_score(100.0, 10_000, 1);
    let s = column_stats(&d, "Collaboration").unwrap();
    assert!((s.mean - expected).abs() < 0.3, "{s:?}");
}

#[test]
fn abm_column_source_gives_one_agent_per_row() {
    let source = Dataset::new(vec![("score", vec![10.0, 55.0, 90.0, 100.0])]).unwrap();
    let cfg = AbmConfig {
        performance_source: PerformanceSource::Column("score".into()),
        ..AbmConfig::new(999, 2)
    };
    let d = gen_abm(&cfg, Some(&source)).unwrap();
    assert_eq!(d.n_rows(), 4);
    assert_eq!(
        d.column("PerformanceScore").unwrap(),
        source.column("score").unwrap()
    );
    assert_eq!(bits(&d), bits(&gen_abm(&cfg, Some(&source)).unwrap()));
}
