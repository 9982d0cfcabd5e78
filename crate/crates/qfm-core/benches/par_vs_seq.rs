//! Compares the rayon-parallel grid evaluation against the sequential
//! fallback on a representative workload: a two-qubit strongly-entangling
//! layout swept over one input period, noiseless and with depolarizing
//! noise (density-operator path).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfm_core::circuit::build_circuit;
use qfm_core::noise::CgeScope;
use qfm_core::{parallel, rng, sim, AnsatzKind, EncodingSpec, NoiseKind, NoiseModel, Observable};
use rand::Rng;

fn grid_eval(c: &mut Criterion) {
    let layout = build_circuit(AnsatzKind::Sea, 2, 2, EncodingSpec::default_for(1)).unwrap();
    let mut r = rng::stream(1, &[rng::tags::THETA]);
    let params: Vec<f64> = (0..layout.n_trainable)
        .map(|_| r.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect();
    let draw = sim::identity_draw(&layout);
    let points: Vec<Vec<f64>> = (0..128)
        .map(|i| vec![i as f64 * std::f64::consts::TAU / 128.0])
        .collect();

    let mut group = c.benchmark_group("grid_eval");
    for (label, noise) in [
        ("pure", NoiseModel::noiseless()),
        ("density", NoiseModel::single(NoiseKind::Dp, 0.01, CgeScope::Both)),
    ] {
        group.bench_with_input(BenchmarkId::new("parallel", label), &noise, |b, noise| {
            b.iter(|| {
                parallel::map_collect(points.len(), |i| {
                    sim::evaluate(&layout, noise, Observable::MeanZ, &params, &points[i], &draw)
                        .unwrap()
                })
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", label), &noise, |b, noise| {
            b.iter(|| {
                parallel::map_collect_seq(points.len(), |i| {
                    sim::evaluate(&layout, noise, Observable::MeanZ, &params, &points[i], &draw)
                        .unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, grid_eval);
criterion_main!(benches);
