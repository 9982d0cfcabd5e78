//! Regression training on random Fourier-series targets.
//!
//! A target is a truncated Fourier series matching the model's integer
//! spectrum, with random coefficients scaled so the target peaks at a
//! fixed amplitude on the training grid. Training minimizes mean squared
//! error on that grid with Adam; gradients come from exact parameter-shift
//! rules (two-term for plain rotations, four-term for controlled
//! rotations) or an optional central finite difference.
//!
//! When coherent gate error is active, one error draw is frozen per
//! optimization step and shared by the loss and every gradient component,
//! so each step descends a consistent (noisy) objective.

use crate::circuit::{CircuitLayout, GateKind};
use crate::error::{Error, Result};
use crate::fourier;
use crate::metrics;
use crate::noise::{CgeDraw, NoiseModel};
use crate::observable::Observable;
use crate::parallel;
use crate::rng::{self, tags};
use crate::sim;
use num_complex::Complex64;
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::str::FromStr;

/// Random Fourier series with conjugate-symmetric coefficients, indexed
/// by non-negative frequency.
#[derive(Clone, Debug)]
pub struct TargetSeries {
    /// c'_ω for ω = 0..=max; negative frequencies mirror by conjugation.
    pub coefficients: Vec<Complex64>,
    pub max_frequency: i64,
    /// Peak |f'| on the training grid after normalization.
    pub amplitude: f64,
}

impl TargetSeries {
    /// Real-valued target f'(x) = c'_0 + 2 Σ_{ω≥1} Re(c'_ω e^{iωx}).
    pub fn evaluate(&self, x: f64) -> f64 {
        let mut acc = self.coefficients[0].re;
        for (w, c) in self.coefficients.iter().enumerate().skip(1) {
            acc += 2.0 * (c * Complex64::from_polar(1.0, w as f64 * x)).re;
        }
        acc
    }

    /// |c'_ω| for any integer frequency, using the conjugate mirror.
    pub fn magnitude(&self, omega: i64) -> f64 {
        self.coefficients
            .get(omega.unsigned_abs() as usize)
            .map(|c| c.norm())
            .unwrap_or(0.0)
    }
}

/// Uniform grid of 2·max+1 points over [−π, π), enough to resolve every
/// integer frequency the model can express.
pub fn training_grid(max_frequency: i64) -> Vec<f64> {
    let s = (2 * max_frequency + 1) as usize;
    (0..s).map(|j| -PI + j as f64 * TAU / s as f64).collect()
}

/// Draw a random target: coefficient magnitudes uniform in [0,1] (the
/// zero-frequency term gets a random sign, positive frequencies a uniform
/// phase), then rescale so the largest |f'| on the training grid equals
/// `amplitude`. Draw order is fixed — ω ascending, magnitude before
/// sign/phase — so a seed pins the target.
pub fn generate_target<R: Rng>(max_frequency: i64, amplitude: f64, rng: &mut R) -> TargetSeries {
    let mut coefficients = Vec::with_capacity(max_frequency as usize + 1);
    let mag: f64 = rng.gen_range(0.0..1.0);
    let sign = if rng.gen_range(0.0..1.0) < 0.5 { -1.0 } else { 1.0 };
    coefficients.push(Complex64::new(sign * mag, 0.0));
    for _ in 1..=max_frequency {
        let mag: f64 = rng.gen_range(0.0..1.0);
        let phase: f64 = rng.gen_range(0.0..TAU);
        coefficients.push(Complex64::from_polar(mag, phase));
    }
    let mut target = TargetSeries {
        coefficients,
        max_frequency,
        amplitude,
    };
    let peak = training_grid(max_frequency)
        .iter()
        .map(|&x| target.evaluate(x).abs())
        .fold(0.0, f64::max);
    let scale = if peak > 0.0 { amplitude / peak } else { 0.0 };
    for c in &mut target.coefficients {
        *c *= scale;
    }
    target
}

/// Mean squared error between model and target samples.
pub fn mse(model: &[f64], target: &[f64]) -> Result<f64> {
    if model.len() != target.len() {
        return Err(Error::LengthMismatch {
            expected: target.len(),
            got: model.len(),
        });
    }
    let s = model.len() as f64;
    Ok(model
        .iter()
        .zip(target)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        / s)
}

/// Per-frequency magnitude gap ||c_ω| − |c'_ω|| between model coefficients
/// (keyed by non-negative ω) and the target. The model must supply exactly
/// the target's frequencies 0..=max.
pub fn coefficient_gap(
    target: &TargetSeries,
    model: &[(i64, Complex64)],
) -> Result<Vec<(i64, f64)>> {
    let expected: Vec<i64> = (0..=target.max_frequency).collect();
    let got: Vec<i64> = model.iter().map(|&(w, _)| w).collect();
    if got != expected {
        return Err(Error::SpectrumMismatch);
    }
    Ok(model
        .iter()
        .map(|&(w, c)| (w, (c.norm() - target.magnitude(w)).abs()))
        .collect())
}

/// How model gradients are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradientMethod {
    /// Exact shift rules: ±π/2 two-term for RX/RY/RZ, four-term for CRX.
    ParameterShift,
    /// Central difference with h = 1e-5.
    FiniteDifference,
}

impl FromStr for GradientMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shift" => Ok(GradientMethod::ParameterShift),
            "fd" => Ok(GradientMethod::FiniteDifference),
            other => Err(Error::UnknownGradientMethod(other.to_string())),
        }
    }
}

const FD_STEP: f64 = 1e-5;

/// Four-term controlled-rotation shift constants.
const CRX_C1: f64 = (std::f64::consts::SQRT_2 + 1.0) / (4.0 * std::f64::consts::SQRT_2);
const CRX_C2: f64 = (std::f64::consts::SQRT_2 - 1.0) / (4.0 * std::f64::consts::SQRT_2);

fn sweep(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    observable: Observable,
    params: &[f64],
    grid: &[f64],
    draw: &CgeDraw,
) -> Result<Vec<f64>> {
    grid.iter()
        .map(|&x| sim::evaluate(layout, noise, observable, params, &[x], draw))
        .collect()
}

/// Model-output partial derivative ∂f(x_j)/∂θ_slot over the whole grid.
#[allow(clippy::too_many_arguments)]
fn partial_on_grid(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    observable: Observable,
    params: &[f64],
    grid: &[f64],
    draw: &CgeDraw,
    slot: usize,
    method: GradientMethod,
) -> Result<Vec<f64>> {
    let mut shifted = params.to_vec();
    let mut eval_at = |delta: f64| -> Result<Vec<f64>> {
        shifted[slot] = params[slot] + delta;
        sweep(layout, noise, observable, &shifted, grid, draw)
    };
    match method {
        GradientMethod::FiniteDifference => {
            let plus = eval_at(FD_STEP)?;
            let minus = eval_at(-FD_STEP)?;
            Ok(plus
                .iter()
                .zip(&minus)
                .map(|(p, m)| (p - m) / (2.0 * FD_STEP))
                .collect())
        }
        GradientMethod::ParameterShift => match layout.slot_kinds[slot] {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                let plus = eval_at(FRAC_PI_2)?;
                let minus = eval_at(-FRAC_PI_2)?;
                Ok(plus
                    .iter()
                    .zip(&minus)
                    .map(|(p, m)| 0.5 * (p - m))
                    .collect())
            }
            GateKind::Crx => {
                let p1 = eval_at(FRAC_PI_2)?;
                let m1 = eval_at(-FRAC_PI_2)?;
                let p3 = eval_at(3.0 * FRAC_PI_2)?;
                let m3 = eval_at(-3.0 * FRAC_PI_2)?;
                Ok((0..grid.len())
                    .map(|j| CRX_C1 * (p1[j] - m1[j]) - CRX_C2 * (p3[j] - m3[j]))
                    .collect())
            }
            GateKind::Cnot => unreachable!("CNOT slots are never trainable"),
        },
    }
}

/// MSE and its gradient at `params`, sharing one base sweep. The gradient
/// is 2/s Σ_j (f − f')·∂f, with partials taken per trainable slot in
/// parallel.
#[allow(clippy::too_many_arguments)]
pub fn loss_gradient(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    observable: Observable,
    params: &[f64],
    grid: &[f64],
    target_values: &[f64],
    draw: &CgeDraw,
    method: GradientMethod,
) -> Result<(f64, Vec<f64>)> {
    let base = sweep(layout, noise, observable, params, grid, draw)?;
    let loss = mse(&base, target_values)?;
    let residual: Vec<f64> = base
        .iter()
        .zip(target_values)
        .map(|(f, t)| f - t)
        .collect();
    let grad = gradient_from_residual(
        layout, noise, observable, params, grid, &residual, draw, method,
    )?;
    Ok((loss, grad))
}

#[allow(clippy::too_many_arguments)]
fn gradient_from_residual(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    observable: Observable,
    params: &[f64],
    grid: &[f64],
    residual: &[f64],
    draw: &CgeDraw,
    method: GradientMethod,
) -> Result<Vec<f64>> {
    let s = grid.len() as f64;
    let partials: Vec<Result<f64>> = parallel::map_collect(layout.n_trainable, |slot| {
        let d = partial_on_grid(layout, noise, observable, params, grid, draw, slot, method)?;
        Ok(2.0 / s * residual.iter().zip(&d).map(|(r, g)| r * g).sum::<f64>())
    });
    partials.into_iter().collect()
}

/// Adam optimizer state with the usual bias correction.
#[derive(Clone, Debug)]
pub struct AdamState {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    t: u32,
    m: Vec<f64>,
    v: Vec<f64>,
}

impl AdamState {
    pub fn new(n_params: usize, lr: f64) -> Self {
        Self {
            lr,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
            t: 0,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
        }
    }

    pub fn step(&mut self, params: &mut [f64], grad: &[f64]) {
        self.t += 1;
        let bc1 = 1.0 - self.beta1.powi(self.t as i32);
        let bc2 = 1.0 - self.beta2.powi(self.t as i32);
        for i in 0..params.len() {
            self.m[i] = self.beta1 * self.m[i] + (1.0 - self.beta1) * grad[i];
            self.v[i] = self.beta2 * self.v[i] + (1.0 - self.beta2) * grad[i] * grad[i];
            let mhat = self.m[i] / bc1;
            let vhat = self.v[i] / bc2;
            params[i] -= self.lr * mhat / (vhat.sqrt() + self.eps);
        }
    }
}

/// Knobs for one training run.
#[derive(Clone, Copy, Debug)]
pub struct TrainingOptions {
    pub steps: usize,
    pub learning_rate: f64,
    pub gradient: GradientMethod,
    /// Record the coefficient trace every this many steps (plus the
    /// final step).
    pub coefficient_cadence: usize,
    /// Record entangling capability every this many steps (plus the
    /// final step); it needs a full extra state evaluation, so it runs
    /// on a sparser cadence than the loss.
    pub entanglement_cadence: usize,
}

impl Default for TrainingOptions {
    fn default() -> Self {
        Self {
            steps: 1000,
            learning_rate: 0.01,
            gradient: GradientMethod::ParameterShift,
            coefficient_cadence: 1,
            entanglement_cadence: 10,
        }
    }
}

/// Loss curve entry. `entangling_q` is populated on entanglement-cadence
/// steps for models with at least two qubits.
#[derive(Clone, Debug)]
pub struct TrainingRecord {
    pub step: usize,
    pub mse: f64,
    pub entangling_q: Option<f64>,
}

/// Per-frequency snapshot: model coefficient magnitude on the training
/// grid and its gap to the target magnitude.
#[derive(Clone, Debug)]
pub struct CoefficientRecord {
    pub step: usize,
    pub omega: i64,
    pub abs_model: f64,
    pub gap: f64,
}

/// Everything a training run produces.
#[derive(Clone, Debug)]
pub struct TrainingTrace {
    pub records: Vec<TrainingRecord>,
    pub coefficient_trace: Vec<CoefficientRecord>,
    pub final_params: Vec<f64>,
    pub final_mse: f64,
}

/// Train the model against `target` for `options.steps` Adam updates.
///
/// Initial parameters come from the stream keyed by `tags::INIT`; the
/// per-step coherent-error draw from `tags::CGE` and the step index. The
/// loss is recorded before each update, so the trace has `steps + 1`
/// entries ending in the final loss.
pub fn train(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    observable: Observable,
    target: &TargetSeries,
    options: &TrainingOptions,
    master_seed: u64,
) -> Result<TrainingTrace> {
    if layout.n_features() != 1 {
        return Err(Error::InvalidInput(
            "training targets are one-dimensional".into(),
        ));
    }
    noise.validate()?;
    let grid = training_grid(target.max_frequency);
    let target_values: Vec<f64> = grid.iter().map(|&x| target.evaluate(x)).collect();
    let mut params: Vec<f64> = {
        let mut r = rng::stream(master_seed, &[tags::INIT]);
        (0..layout.n_trainable)
            .map(|_| r.gen_range(0.0..TAU))
            .collect()
    };
    let mut adam = AdamState::new(params.len(), options.learning_rate);
    let mut records = Vec::with_capacity(options.steps + 1);
    let mut coefficient_trace = Vec::new();
    let coeff_cadence = options.coefficient_cadence.max(1);
    let ent_cadence = options.entanglement_cadence.max(1);

    for step in 0..=options.steps {
        let draw = step_draw(layout, noise, master_seed, step);
        let values = sweep(layout, noise, observable, &params, &grid, &draw)?;
        let loss = mse(&values, &target_values)?;
        check_finite(step, loss)?;
        let entangling_q = if (step % ent_cadence == 0 || step == options.steps)
            && layout.n_qubits >= 2
        {
            Some(metrics::state_entanglement(
                layout, noise, &params, &[0.0], &draw,
            )?)
        } else {
            None
        };
        records.push(TrainingRecord {
            step,
            mse: loss,
            entangling_q,
        });
        if step % coeff_cadence == 0 || step == options.steps {
            let model: Vec<(i64, Complex64)> = (0..=target.max_frequency)
                .map(|w| (w, fourier::integer_coefficient(&values, &grid, w)))
                .collect();
            for ((w, c), (_, gap)) in model.iter().zip(coefficient_gap(target, &model)?) {
                coefficient_trace.push(CoefficientRecord {
                    step,
                    omega: *w,
                    abs_model: c.norm(),
                    gap,
                });
            }
        }
        if step == options.steps {
            break;
        }
        let residual: Vec<f64> = values
            .iter()
            .zip(&target_values)
            .map(|(f, t)| f - t)
            .collect();
        let grad = gradient_from_residual(
            layout,
            noise,
            observable,
            &params,
            &grid,
            &residual,
            &draw,
            options.gradient,
        )?;
        adam.step(&mut params, &grad);
    }

    let final_mse = records.last().expect("at least one record").mse;
    Ok(TrainingTrace {
        records,
        coefficient_trace,
        final_params: params,
        final_mse,
    })
}

fn step_draw(layout: &CircuitLayout, noise: &NoiseModel, master_seed: u64, step: usize) -> CgeDraw {
    if noise.coherent_gate_error == 0.0 {
        return sim::identity_draw(layout);
    }
    let mut r = rng::stream(master_seed, &[tags::CGE, step as u64]);
    CgeDraw::sample(
        layout.n_trainable,
        layout.n_encoding_gates,
        noise.coherent_gate_error,
        noise.cge_scope,
        &mut r,
    )
}

fn check_finite(step: usize, loss: f64) -> Result<()> {
    if !loss.is_finite() {
        return Err(Error::Divergence { step, loss });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_circuit, AnsatzKind, EncodingSpec};
    use crate::noise::{CgeScope, NoiseKind};

    #[test]
    fn target_peaks_at_requested_amplitude() {
        let mut r = rng::stream(11, &[tags::TARGET]);
        let t = generate_target(3, 0.5, &mut r);
        let peak = training_grid(3)
            .iter()
            .map(|&x| t.evaluate(x).abs())
            .fold(0.0, f64::max);
        assert!((peak - 0.5).abs() < 1e-12);
        // deterministic per seed
        let mut r2 = rng::stream(11, &[tags::TARGET]);
        let t2 = generate_target(3, 0.5, &mut r2);
        assert_eq!(t.coefficients, t2.coefficients);
    }

    #[test]
    fn target_coefficients_roundtrip_through_grid_dft() {
        let mut r = rng::stream(4, &[tags::TARGET]);
        let t = generate_target(2, 0.5, &mut r);
        let grid = training_grid(2);
        let values: Vec<f64> = grid.iter().map(|&x| t.evaluate(x)).collect();
        for w in -2i64..=2 {
            let c = fourier::integer_coefficient(&values, &grid, w);
            let expect = if w >= 0 {
                t.coefficients[w as usize]
            } else {
                t.coefficients[(-w) as usize].conj()
            };
            assert!((c - expect).norm() < 1e-12, "w={w}");
        }
    }

    #[test]
    fn shift_rules_match_finite_difference() {
        for ansatz in [AnsatzKind::Sea, AnsatzKind::C19] {
            let layout = build_circuit(ansatz, 2, 1, EncodingSpec::default_for(1)).unwrap();
            let mut r = rng::stream(8, &[tags::INIT]);
            let params: Vec<f64> = (0..layout.n_trainable)
                .map(|_| r.gen_range(-PI..PI))
                .collect();
            let grid = training_grid(2);
            let mut t = rng::stream(9, &[tags::TARGET]);
            let target = generate_target(2, 0.5, &mut t);
            let target_values: Vec<f64> = grid.iter().map(|&x| target.evaluate(x)).collect();
            let draw = sim::identity_draw(&layout);
            let noise = NoiseModel::single(NoiseKind::Dp, 0.01, CgeScope::Both);
            let (_, shift) = loss_gradient(
                &layout,
                &noise,
                Observable::MeanZ,
                &params,
                &grid,
                &target_values,
                &draw,
                GradientMethod::ParameterShift,
            )
            .unwrap();
            let (_, fd) = loss_gradient(
                &layout,
                &noise,
                Observable::MeanZ,
                &params,
                &grid,
                &target_values,
                &draw,
                GradientMethod::FiniteDifference,
            )
            .unwrap();
            for (a, b) in shift.iter().zip(&fd) {
                assert!((a - b).abs() < 1e-6, "{ansatz}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn realizable_target_trains_to_zero_loss() {
        let layout =
            build_circuit(AnsatzKind::Rotations, 1, 1, EncodingSpec::default_for(1)).unwrap();
        // f(x) = cos(θ₁ + x + θ₂) realizes c₁ = e^{iφ}/2 exactly
        let target = TargetSeries {
            coefficients: vec![
                Complex64::new(0.0, 0.0),
                Complex64::from_polar(0.5, 0.3),
            ],
            max_frequency: 1,
            amplitude: 0.5,
        };
        let options = TrainingOptions {
            steps: 200,
            learning_rate: 0.05,
            ..Default::default()
        };
        let trace = train(
            &layout,
            &NoiseModel::noiseless(),
            Observable::MeanZ,
            &target,
            &options,
            17,
        )
        .unwrap();
        assert!(trace.final_mse < 1e-8, "final mse {}", trace.final_mse);
        assert_eq!(trace.records.len(), options.steps + 1);
        // coefficient gap at the final step closes
        let last_gap = trace
            .coefficient_trace
            .iter()
            .rev()
            .find(|c| c.omega == 1)
            .unwrap();
        assert!(last_gap.gap < 1e-4);
        // one-qubit models report no entanglement
        assert!(trace.records.iter().all(|r| r.entangling_q.is_none()));
    }

    #[test]
    fn loss_decreases_on_generated_target() {
        let layout = build_circuit(AnsatzKind::Sea, 2, 1, EncodingSpec::default_for(1)).unwrap();
        let mut r = rng::stream(23, &[tags::TARGET]);
        let target = generate_target(2, 0.5, &mut r);
        let options = TrainingOptions {
            steps: 40,
            ..Default::default()
        };
        let trace = train(
            &layout,
            &NoiseModel::noiseless(),
            Observable::MeanZ,
            &target,
            &options,
            5,
        )
        .unwrap();
        assert!(trace.final_mse < trace.records[0].mse);
        // entanglement is sampled on its own cadence for a two-qubit model
        for rec in &trace.records {
            if rec.step % options.entanglement_cadence == 0 || rec.step == options.steps {
                assert!(rec.entangling_q.is_some());
            } else {
                assert!(rec.entangling_q.is_none());
            }
        }
        // coefficients are traced every step by default
        let per_step = (target.max_frequency + 1) as usize;
        assert_eq!(
            trace.coefficient_trace.len(),
            per_step * (options.steps + 1)
        );
    }

    #[test]
    fn mse_and_gap_validate_inputs() {
        assert!(mse(&[0.0, 0.0], &[1.0]).is_err());
        assert!((mse(&[0.5, -0.5], &[0.0, 0.0]).unwrap() - 0.25).abs() < 1e-15);
        let target = TargetSeries {
            coefficients: vec![Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.5)],
            max_frequency: 1,
            amplitude: 0.5,
        };
        // phase differences do not register, magnitude differences do
        let model = vec![
            (0, Complex64::new(-0.1, 0.0)),
            (1, Complex64::new(0.3, 0.0)),
        ];
        let gaps = coefficient_gap(&target, &model).unwrap();
        assert!((gaps[0].1 - 0.0).abs() < 1e-15);
        assert!((gaps[1].1 - 0.2).abs() < 1e-15);
        // missing or extra frequencies are a spectrum mismatch
        assert!(coefficient_gap(&target, &model[..1]).is_err());
    }

    #[test]
    fn zero_step_run_records_only_the_initial_state() {
        let layout = build_circuit(AnsatzKind::Sea, 2, 1, EncodingSpec::default_for(1)).unwrap();
        let mut r = rng::stream(2, &[tags::TARGET]);
        let target = generate_target(2, 0.5, &mut r);
        let options = TrainingOptions {
            steps: 0,
            ..Default::default()
        };
        let trace = train(
            &layout,
            &NoiseModel::noiseless(),
            Observable::MeanZ,
            &target,
            &options,
            1,
        )
        .unwrap();
        assert_eq!(trace.records.len(), 1);
        assert_eq!(trace.records[0].step, 0);
        assert_eq!(trace.final_mse, trace.records[0].mse);
    }

    #[test]
    fn training_is_deterministic() {
        let layout = build_circuit(AnsatzKind::Hea, 2, 1, EncodingSpec::default_for(1)).unwrap();
        let mut r = rng::stream(3, &[tags::TARGET]);
        let target = generate_target(2, 0.5, &mut r);
        let noise = NoiseModel::single(NoiseKind::Cge, 0.02, CgeScope::Both);
        let options = TrainingOptions {
            steps: 12,
            ..Default::default()
        };
        let a = train(&layout, &noise, Observable::MeanZ, &target, &options, 7).unwrap();
        let b = train(&layout, &noise, Observable::MeanZ, &target, &options, 7).unwrap();
        assert_eq!(a.final_params, b.final_params);
        assert_eq!(a.final_mse, b.final_mse);
    }

    #[test]
    fn gradient_method_tokens_parse() {
        assert_eq!(
            "shift".parse::<GradientMethod>().unwrap(),
            GradientMethod::ParameterShift
        );
        assert_eq!(
            "fd".parse::<GradientMethod>().unwrap(),
            GradientMethod::FiniteDifference
        );
        assert!("newton".parse::<GradientMethod>().is_err());
    }
}
