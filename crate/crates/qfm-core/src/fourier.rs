//! Frequency-domain analysis of model outputs.
//!
//! A model with `L` encoding layers on `n` qubits is a truncated Fourier
//! series in each input feature with integer frequencies up to `n·L`. The
//! analytic side of this module counts those frequencies and their
//! redundancies (the number of generator-eigenvalue pairs producing each
//! frequency); the numeric side samples the model on a uniform grid and
//! recovers complex coefficients by discrete Fourier transform.
//!
//! Coefficients are taken over a window of `oversample` periods, so bins
//! land on frequencies `m / oversample`. With `oversample = 1` the bins
//! are the integer frequencies; larger windows resolve the fractional
//! content that coherent encoding errors introduce. The band edge is
//! `max + 1/2`, comfortably above the frequencies such errors reach at
//! the strengths studied here.

use crate::circuit::CircuitLayout;
use crate::error::{Error, Result};
use crate::noise::{CgeDraw, NoiseModel};
use crate::observable::Observable;
use crate::sim;
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::TAU;

/// Exact binomial coefficient; intermediate products stay in u128.
fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Number of generator-eigenvalue pairs that produce integer frequency
/// `omega` for an `n_qubits`-qubit, `n_layers`-layer model: the lag-ω
/// autocorrelation of the binomial multiplicity profile C(nL, ·).
pub fn redundancy_count(n_qubits: usize, n_layers: usize, omega: i64) -> u64 {
    redundancy_for_max((n_qubits * n_layers) as i64, omega)
}

fn redundancy_for_max(m: i64, omega: i64) -> u64 {
    let lag = omega.unsigned_abs() as i64;
    if lag > m {
        return 0;
    }
    let mut acc: u128 = 0;
    for j in lag..=m {
        acc += binomial(m as u64, j as u64) as u128 * binomial(m as u64, (j - lag) as u64) as u128;
    }
    acc as u64
}

/// Integer frequency lattice of a layout with per-frequency redundancies.
///
/// Multi-feature models take the Cartesian product of the per-feature
/// range; redundancies multiply across features.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub n_features: usize,
    /// Highest integer frequency per feature, n·L.
    pub max_frequency: i64,
    /// Frequency vectors, feature 0 slowest, each component in
    /// −max..=max.
    pub frequencies: Vec<Vec<i64>>,
    /// Redundancy per frequency vector, aligned with `frequencies`.
    pub redundancies: Vec<u64>,
}

impl Spectrum {
    /// Σ|R| per feature: every model sees 4^(nL) eigenvalue pairs.
    pub fn total_pairs_per_feature(&self) -> u64 {
        (-self.max_frequency..=self.max_frequency)
            .map(|w| redundancy_for_max(self.max_frequency, w))
            .sum()
    }
}

/// Analytic spectrum of a layout: frequencies −nL..=nL per feature and
/// their redundancies.
pub fn analytic_spectrum(layout: &CircuitLayout) -> Spectrum {
    let n = layout.n_qubits;
    let l = layout.n_layers;
    let d = layout.n_features();
    let max = (n * l) as i64;
    let one_dim: Vec<(i64, u64)> = (-max..=max)
        .map(|w| (w, redundancy_count(n, l, w)))
        .collect();
    let mut frequencies = Vec::new();
    let mut redundancies = Vec::new();
    let span = one_dim.len();
    let total = span.pow(d as u32);
    for flat in 0..total {
        let mut vec = vec![0i64; d];
        let mut red: u128 = 1;
        let mut rem = flat;
        for t in (0..d).rev() {
            let idx = rem % span;
            rem /= span;
            vec[t] = one_dim[idx].0;
            red *= one_dim[idx].1 as u128;
        }
        frequencies.push(vec);
        redundancies.push(red as u64);
    }
    Spectrum {
        n_features: d,
        max_frequency: max,
        frequencies,
        redundancies,
    }
}

/// One DFT bin: a (possibly fractional) frequency vector and its complex
/// coefficient.
#[derive(Clone, Debug)]
pub struct CoefficientBin {
    pub frequency: Vec<f64>,
    pub value: Complex64,
}

/// Complex Fourier coefficients of one model evaluation sweep.
#[derive(Clone, Debug)]
pub struct CoefficientSet {
    pub n_features: usize,
    pub max_frequency: i64,
    pub oversample: u32,
    /// Bins in row-major centered-frequency order, feature 0 slowest.
    pub bins: Vec<CoefficientBin>,
}

impl CoefficientSet {
    fn same_shape(&self, other: &Self) -> bool {
        self.n_features == other.n_features
            && self.max_frequency == other.max_frequency
            && self.oversample == other.oversample
            && self.bins.len() == other.bins.len()
    }
}

/// Per-axis sample positions: `oversample·(2·max+1)` points spaced
/// 2π/(2·max+1), covering `oversample` periods.
pub fn sample_points_1d(max_frequency: i64, oversample: u32) -> Vec<f64> {
    let base = (2 * max_frequency + 1) as usize;
    let s = base * oversample as usize;
    (0..s).map(|j| j as f64 * TAU / base as f64).collect()
}

/// Cartesian product grid over `d` copies of `axis`, feature 0 slowest.
pub fn cartesian_points(axis: &[f64], d: usize) -> Vec<Vec<f64>> {
    let s = axis.len();
    let total = s.pow(d as u32);
    (0..total)
        .map(|flat| {
            let mut point = vec![0.0; d];
            let mut rem = flat;
            for t in (0..d).rev() {
                point[t] = axis[rem % s];
                rem /= s;
            }
            point
        })
        .collect()
}

/// Centered DFT bin indices ⌈−s/2⌉ ..= ⌈s/2⌉−1.
fn centered_bins(s: usize) -> Vec<i64> {
    let lo = -((s as i64) / 2);
    (lo..lo + s as i64).collect()
}

/// Multi-dimensional DFT of real samples on the row-major grid
/// (feature 0 slowest), returning centered-bin coefficients
/// c_m = s^{-D} Σ_j f_j exp(−2πi m·j / s).
pub fn dft(values: &[f64], s: usize, d: usize) -> Vec<Complex64> {
    let total = s.pow(d as u32);
    assert_eq!(values.len(), total, "grid size mismatch");
    let bins = centered_bins(s);
    // twiddle table e^{−2πi k/s}
    let twiddle: Vec<Complex64> = (0..s)
        .map(|k| Complex64::from_polar(1.0, -TAU * k as f64 / s as f64))
        .collect();
    let mut work: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    for t in 0..d {
        let stride = s.pow((d - 1 - t) as u32);
        let mut out = vec![Complex64::new(0.0, 0.0); total];
        let mut line = vec![Complex64::new(0.0, 0.0); s];
        for base in 0..total {
            if !(base / stride).is_multiple_of(s) {
                continue;
            }
            for (j, slot) in line.iter_mut().enumerate() {
                *slot = work[base + j * stride];
            }
            for (p, &m) in bins.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &v) in line.iter().enumerate() {
                    let k = (m * j as i64).rem_euclid(s as i64) as usize;
                    acc += v * twiddle[k];
                }
                out[base + p * stride] = acc;
            }
        }
        work = out;
    }
    let norm = 1.0 / total as f64;
    work.iter_mut().for_each(|v| *v *= norm);
    work
}

/// Sample the model over `oversample` periods per feature and return its
/// Fourier coefficients at frequencies m/oversample per axis.
pub fn extract_coefficients(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    observable: Observable,
    params: &[f64],
    draw: &CgeDraw,
    oversample: u32,
) -> Result<CoefficientSet> {
    if oversample == 0 {
        return Err(Error::InvalidInput("oversample must be at least 1".into()));
    }
    let spectrum = analytic_spectrum(layout);
    let d = layout.n_features();
    let axis = sample_points_1d(spectrum.max_frequency, oversample);
    let s = axis.len();
    let points = cartesian_points(&axis, d);
    let values = sim::evaluate_grid(layout, noise, observable, params, &points, draw)?;
    let coeffs = dft(&values, s, d);
    let bins_1d = centered_bins(s);
    let total = coeffs.len();
    let mut bins = Vec::with_capacity(total);
    for (flat, value) in coeffs.into_iter().enumerate() {
        let mut frequency = vec![0.0; d];
        let mut rem = flat;
        for t in (0..d).rev() {
            frequency[t] = bins_1d[rem % s] as f64 / oversample as f64;
            rem /= s;
        }
        bins.push(CoefficientBin { frequency, value });
    }
    Ok(CoefficientSet {
        n_features: d,
        max_frequency: spectrum.max_frequency,
        oversample,
        bins,
    })
}

/// Independent integral route to one integer-frequency coefficient:
/// c_ω = (2π)^{-D} ∮ f(x) e^{−iω·x} dx by composite trapezoid with
/// 10·(2·max+1) panels per axis. Exact (to rounding) for the model's
/// trigonometric-polynomial outputs; used to cross-check the DFT.
pub fn quadrature_coefficient(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    observable: Observable,
    params: &[f64],
    draw: &CgeDraw,
    omega: &[i64],
) -> Result<Complex64> {
    let d = layout.n_features();
    if omega.len() != d {
        return Err(Error::LengthMismatch {
            expected: d,
            got: omega.len(),
        });
    }
    let spectrum = analytic_spectrum(layout);
    let panels = 10 * (2 * spectrum.max_frequency + 1) as usize;
    let h = TAU / panels as f64;
    // trapezoid nodes 0..=panels with half weights at the ends
    let nodes: Vec<f64> = (0..=panels).map(|k| k as f64 * h).collect();
    let weight = |k: usize| if k == 0 || k == panels { 0.5 } else { 1.0 };
    let total = nodes.len().pow(d as u32);
    let mut points = Vec::with_capacity(total);
    for flat in 0..total {
        let mut point = vec![0.0; d];
        let mut rem = flat;
        for t in (0..d).rev() {
            point[t] = nodes[rem % nodes.len()];
            rem /= nodes.len();
        }
        points.push(point);
    }
    let values = sim::evaluate_grid(layout, noise, observable, params, &points, draw)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (flat, value) in values.iter().enumerate() {
        let mut w = 1.0;
        let mut phase = 0.0;
        let mut rem = flat;
        for t in (0..d).rev() {
            let k = rem % nodes.len();
            rem /= nodes.len();
            w *= weight(k);
            phase -= omega[t] as f64 * nodes[k];
        }
        acc += Complex64::from_polar(w * value, phase);
    }
    Ok(acc * (h / TAU).powi(d as i32))
}

/// Coefficient of integer frequency ω recovered from samples on any
/// uniform grid covering one period: c_ω = (1/s) Σ f(x_j) e^{−iω x_j}.
pub fn integer_coefficient(values: &[f64], points: &[f64], omega: i64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (&v, &x) in values.iter().zip(points) {
        acc += Complex64::from_polar(v, -(omega as f64) * x);
    }
    acc / values.len() as f64
}

/// Ensemble statistics of one frequency bin across parameter draws.
#[derive(Clone, Debug, Serialize)]
pub struct FrequencyStats {
    pub frequency: Vec<f64>,
    pub re_mean: f64,
    pub im_mean: f64,
    /// Mean coefficient magnitude μ = ⟨|c|⟩.
    pub abs_mean: f64,
    /// Population standard deviation of |c| relative to μ; zero when the
    /// bin is empty (μ below 1e-14).
    pub rel_std: f64,
    pub cov_rr: f64,
    pub cov_ri: f64,
    pub cov_ii: f64,
}

/// Magnitude below which a bin counts as unoccupied.
pub const OCCUPANCY_THRESHOLD: f64 = 1e-14;

/// Per-bin ensemble statistics over coefficient sets from independent
/// parameter draws. All sets must share the same bin structure.
pub fn coefficient_stats(sets: &[CoefficientSet]) -> Result<Vec<FrequencyStats>> {
    let first = sets.first().ok_or(Error::EmptySpectrum)?;
    if sets.iter().any(|s| !s.same_shape(first)) {
        return Err(Error::SpectrumMismatch);
    }
    let n = sets.len() as f64;
    let mut out = Vec::with_capacity(first.bins.len());
    for b in 0..first.bins.len() {
        let values: Vec<Complex64> = sets.iter().map(|s| s.bins[b].value).collect();
        let re_mean = values.iter().map(|c| c.re).sum::<f64>() / n;
        let im_mean = values.iter().map(|c| c.im).sum::<f64>() / n;
        let abs: Vec<f64> = values.iter().map(|c| c.norm()).collect();
        let abs_mean = abs.iter().sum::<f64>() / n;
        let abs_var = abs.iter().map(|a| (a - abs_mean).powi(2)).sum::<f64>() / n;
        let rel_std = if abs_mean < OCCUPANCY_THRESHOLD {
            0.0
        } else {
            abs_var.sqrt() / abs_mean
        };
        let cov_rr = values.iter().map(|c| (c.re - re_mean).powi(2)).sum::<f64>() / n;
        let cov_ii = values.iter().map(|c| (c.im - im_mean).powi(2)).sum::<f64>() / n;
        let cov_ri = values
            .iter()
            .map(|c| (c.re - re_mean) * (c.im - im_mean))
            .sum::<f64>()
            / n;
        out.push(FrequencyStats {
            frequency: first.bins[b].frequency.clone(),
            re_mean,
            im_mean,
            abs_mean,
            rel_std,
            cov_rr,
            cov_ri,
            cov_ii,
        });
    }
    Ok(out)
}

/// True for bins counted once per ± pair: the zero vector and vectors
/// whose first nonzero component is positive.
pub fn is_canonical_frequency(frequency: &[f64]) -> bool {
    for &f in frequency {
        if f > 0.0 {
            return true;
        }
        if f < 0.0 {
            return false;
        }
    }
    true
}

/// Number of occupied canonical bins: mean magnitude μ above `threshold`
/// over the zero vector and the positive half of each ± pair.
pub fn spectrum_occupancy(stats: &[FrequencyStats], threshold: f64) -> usize {
    stats
        .iter()
        .filter(|s| is_canonical_frequency(&s.frequency) && s.abs_mean > threshold)
        .count()
}
