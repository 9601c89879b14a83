use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use synthdata::{
    fidelity_report, gen_abm, gen_bootstrap, gen_copula, gen_multivariate, train_gan, AbmConfig,
    BootstrapConfig, CopulaConfig, GanConfig, MultivariateConfig,
};
use synthdata_bench::behavior_sample;

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for n in [1_000usize, 10_000] {
        group.throughput(Throughput::Elements(n as u64));
        group.bench_with_input(BenchmarkId::new("multivariate", n), &n, |b, &n| {
            b.iter(|| gen_multivariate(&MultivariateConfig::behavior_defaults(n, 1)).unwrap())
        });
        let source = behavior_sample(n, 2);
        group.bench_with_input(BenchmarkId::new("bootstrap", n), &n, |b, &n| {
            b.iter(|| gen_bootstrap(&source, &BootstrapConfig::new(n, 3)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("copula", n), &n, |b, &n| {
            b.iter(|| gen_copula(&CopulaConfig::behavior_defaults(n, 4)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("abm", n), &n, |b, &n| {
            b.iter(|| gen_abm(&AbmConfig::new(n, 5), None).unwrap())
        });
    }
    group.finish();
}

fn gan_training(c: &mut Criterion) {
    let data = behavior_sample(1000, 6);
    let cfg = GanConfig {
        steps: 200,
        seed: 7,
        ..GanConfig::default()
    };
    let mut group = c.benchmark_group("gan");
    group.sample_size(10);
    group.throughput(Throughput::Elements(cfg.steps as u64));
    group.bench_function("train_200_steps", |b| {
        b.iter(|| train_gan(black_box(&data), &cfg).unwrap())
    });
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let real = behavior_sample(10_000, 8);
    let synth = behavior_sample(10_000, 9);
    c.bench_function("fidelity_report_10k", |b| {
        b.iter(|| fidelity_report(black_box(&real), black_box(&synth)).unwrap())
    });
}

criterion_group!(benches, generators, gan_training, evaluation);
criterion_main!(benches);
