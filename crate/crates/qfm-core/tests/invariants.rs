//! Property tests for the simulator's structural invariants: channel
//! trace preservation, DFT consistency, frequency-lattice symmetry, and
//! local-unitary invariance of the entanglement measure.

use proptest::prelude::*;
use qfm_core::circuit::{build_circuit, AnsatzKind};
use qfm_core::fourier;
use qfm_core::linalg::{rx, ry, rz};
use qfm_core::metrics;
use qfm_core::noise::CgeScope;
use qfm_core::sim;
use qfm_core::{EncodingSpec, NoiseModel, Observable, PureState};

fn ansatz_strategy() -> impl Strategy<Value = AnsatzKind> {
    prop_oneof![
        Just(AnsatzKind::Sea),
        Just(AnsatzKind::Hea),
        Just(AnsatzKind::C15),
        Just(AnsatzKind::C19),
    ]
}

fn noise_strategy() -> impl Strategy<Value = NoiseModel> {
    (
        0.0..0.1f64,
        0.0..0.1f64,
        0.0..0.1f64,
        0.0..0.1f64,
        0.0..0.1f64,
        0.0..0.1f64,
        0.0..0.1f64,
    )
        .prop_map(|(bf, pf, dp, ad, pd, sp, me)| NoiseModel {
            bit_flip: bf,
            phase_flip: pf,
            depolarizing: dp,
            amplitude_damping: ad,
            phase_damping: pd,
            state_preparation: sp,
            measurement: me,
            coherent_gate_error: 0.0,
            cge_scope: CgeScope::Both,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn channels_preserve_trace_and_output_bounds(
        ansatz in ansatz_strategy(),
        n in 1usize..=3,
        l in 0usize..=2,
        noise in noise_strategy(),
        seed in 0u64..1000,
        x in -3.0..3.0f64,
    ) {
        let layout = build_circuit(ansatz, n, l, EncodingSpec::default_for(1)).unwrap();
        let params: Vec<f64> = {
            use rand::Rng;
            let mut r = qfm_core::rng::stream(seed, &[qfm_core::rng::tags::THETA]);
            (0..layout.n_trainable).map(|_| r.gen_range(-3.2..3.2)).collect()
        };
        let draw = sim::identity_draw(&layout);
        let rho = sim::run_density(&layout, &noise, &params, &[x], &draw).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        prop_assert!(rho.purity() <= 1.0 + 1e-10);
        let f = Observable::MeanZ.expectation(&rho);
        prop_assert!(f.is_finite() && f.abs() <= 1.0 + 1e-10);
    }

    #[test]
    fn dft_reconstructs_grid_samples(
        ansatz in ansatz_strategy(),
        seed in 0u64..1000,
    ) {
        let layout = build_circuit(ansatz, 2, 1, EncodingSpec::default_for(1)).unwrap();
        let params: Vec<f64> = {
            use rand::Rng;
            let mut r = qfm_core::rng::stream(seed, &[qfm_core::rng::tags::THETA]);
            (0..layout.n_trainable).map(|_| r.gen_range(-3.2..3.2)).collect()
        };
        let draw = sim::identity_draw(&layout);
        let set = fourier::extract_coefficients(
            &layout,
            &NoiseModel::noiseless(),
            Observable::MeanZ,
            &params,
            &draw,
            1,
        ).unwrap();
        // f(x) rebuilt from recovered coefficients matches fresh samples
        for x in [0.0, 0.7, 2.9] {
            let rebuilt: f64 = set
                .bins
                .iter()
                .map(|b| (b.value * num_complex::Complex64::from_polar(1.0, b.frequency[0] * x)).re)
                .sum();
            let direct = sim::evaluate(
                &layout,
                &NoiseModel::noiseless(),
                Observable::MeanZ,
                &params,
                &[x],
                &draw,
            ).unwrap();
            prop_assert!((rebuilt - direct).abs() < 1e-10);
        }
    }

    #[test]
    fn redundancies_are_symmetric_and_complete(
        n in 1usize..=4,
        l in 1usize..=3,
    ) {
        let m = (n * l) as i64;
        let mut total = 0u64;
        for w in -m..=m {
            prop_assert_eq!(
                fourier::redundancy_count(n, l, w),
                fourier::redundancy_count(n, l, -w)
            );
            total += fourier::redundancy_count(n, l, w);
        }
        prop_assert_eq!(total, 4u64.pow((n * l) as u32));
        prop_assert_eq!(fourier::redundancy_count(n, l, m + 1), 0);
    }

    #[test]
    fn entanglement_is_invariant_under_local_rotations(
        a in -3.2..3.2f64,
        b in -3.2..3.2f64,
        c in -3.2..3.2f64,
        seed in 0u64..1000,
    ) {
        // random two-qubit state from a strongly-entangling block
        let layout = build_circuit(AnsatzKind::Sea, 2, 0, EncodingSpec::default_for(1)).unwrap();
        let params: Vec<f64> = {
            use rand::Rng;
            let mut r = qfm_core::rng::stream(seed, &[qfm_core::rng::tags::THETA]);
            (0..layout.n_trainable).map(|_| r.gen_range(-3.2..3.2)).collect()
        };
        let psi = sim::run_pure(&layout, &params, &[0.0], &sim::identity_draw(&layout)).unwrap();
        let q0 = metrics::mw_entanglement_pure(&psi).unwrap();
        let mut rotated: PureState = psi;
        rotated.apply_1q(&rx(a), 0).unwrap();
        rotated.apply_1q(&ry(b), 1).unwrap();
        rotated.apply_1q(&rz(c), 0).unwrap();
        let q1 = metrics::mw_entanglement_pure(&rotated).unwrap();
        prop_assert!((q0 - q1).abs() < 1e-10);
    }
}
