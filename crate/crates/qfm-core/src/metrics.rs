//! Expressibility and entangling-capability metrics.
//!
//! Expressibility is the Kullback–Leibler divergence between the fidelity
//! histogram of random parameter pairs and the Haar-random baseline
//! (smaller = more expressive). Entangling capability is the mean
//! Meyer–Wallach measure over random parameter draws; on mixed states the
//! measure is extended through the spectral decomposition.
//!
//! Both metrics are usually evaluated on a layout stripped to a single
//! trainable block (see [`CircuitLayout::strip_for_metrics`]); the
//! functions here accept any layout and evaluate it at input zero.

use crate::circuit::CircuitLayout;
use crate::error::{Error, Result};
use crate::noise::{CgeDraw, NoiseModel};
use crate::parallel;
use crate::rng::{self, tags};
use crate::sim;
use crate::state::{pure_fidelity, uhlmann_fidelity, DensityOperator, PureState};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Zero-probability floor inside the KL logarithm. Empty bins contribute
/// zero outright; the floor only guards the occupied-bin ratio.
const KL_FLOOR: f64 = 1e-12;

/// Eigenvalues below this are dropped from spectral decompositions.
const EIGENVALUE_CUTOFF: f64 = 1e-12;

/// Probability a Haar-random pure state pair lands in each fidelity bin:
/// the CDF 1 − (1−F)^(N−1) differenced over a uniform partition of
/// [0, 1]. One qubit gives the uniform histogram.
pub fn haar_bin_probabilities(n_qubits: usize, n_bins: usize) -> Vec<f64> {
    let nm1 = ((1u64 << n_qubits) - 1) as f64;
    // difference the survival function (1−F)^(N−1) so the tiny tail bins
    // don't cancel against 1.0
    (0..n_bins)
        .map(|k| {
            let above_lo = (n_bins - k) as f64 / n_bins as f64;
            let above_hi = (n_bins - k - 1) as f64 / n_bins as f64;
            above_lo.powf(nm1) - above_hi.powf(nm1)
        })
        .collect()
}

fn sample_thetas<R: Rng>(rng: &mut R, k: usize) -> Vec<f64> {
    (0..k)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect()
}

/// Draw a parameter vector and its coherent-error sample from the stream
/// keyed by (`tag`, `index`).
fn draw_instance(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    master_seed: u64,
    tag: u64,
    index: u64,
) -> (Vec<f64>, CgeDraw) {
    let mut r = rng::stream(master_seed, &[tag, index]);
    let thetas = sample_thetas(&mut r, layout.n_trainable);
    let draw = CgeDraw::sample(
        layout.n_trainable,
        layout.n_encoding_gates,
        noise.coherent_gate_error,
        noise.cge_scope,
        &mut r,
    );
    (thetas, draw)
}

fn instance_fidelity(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    master_seed: u64,
    pair: u64,
) -> Result<f64> {
    let x = vec![0.0; layout.n_features()];
    let (ta, da) = draw_instance(layout, noise, master_seed, tags::FIDELITY, 2 * pair);
    let (tb, db) = draw_instance(layout, noise, master_seed, tags::FIDELITY, 2 * pair + 1);
    if noise.needs_density() {
        let ra = sim::run_density(layout, noise, &ta, &x, &da)?;
        let rb = sim::run_density(layout, noise, &tb, &x, &db)?;
        Ok(uhlmann_fidelity(&ra, &rb))
    } else {
        let pa = sim::run_pure(layout, &ta, &x, &da)?;
        let pb = sim::run_pure(layout, &tb, &x, &db)?;
        Ok(pure_fidelity(&pa, &pb))
    }
}

/// Expressibility estimate. `underpowered` flags runs whose pair budget
/// is below the bin count, so the histogram cannot populate every bin
/// even for a Haar-perfect circuit.
#[derive(Clone, Copy, Debug)]
pub struct ExpressibilityReport {
    pub kl_divergence: f64,
    pub n_bins: usize,
    pub n_pairs: usize,
    pub underpowered: bool,
}

/// KL divergence of the sampled pair-fidelity histogram from the Haar
/// baseline. Each of the `n_pairs` pairs uses two fresh parameter
/// vectors; nothing is reused across pairs.
pub fn expressibility(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    n_bins: usize,
    n_pairs: usize,
    master_seed: u64,
) -> Result<ExpressibilityReport> {
    if n_bins == 0 || n_pairs == 0 {
        return Err(Error::NotEnoughSamples {
            needed: 1,
            got: 0,
        });
    }
    let fidelities: Vec<Result<f64>> = parallel::map_collect(n_pairs, |i| {
        instance_fidelity(layout, noise, master_seed, i as u64)
    });
    let mut counts = vec![0usize; n_bins];
    for f in fidelities {
        let f = f?.clamp(0.0, 1.0);
        let bin = ((f * n_bins as f64) as usize).min(n_bins - 1);
        counts[bin] += 1;
    }
    let haar = haar_bin_probabilities(layout.n_qubits, n_bins);
    let mut kl = 0.0;
    for (count, q) in counts.iter().zip(&haar) {
        if *count == 0 {
            continue;
        }
        let p = *count as f64 / n_pairs as f64;
        kl += p * (p.max(KL_FLOOR) / q).ln();
    }
    Ok(ExpressibilityReport {
        kl_divergence: kl,
        n_bins,
        n_pairs,
        underpowered: n_pairs < n_bins,
    })
}

fn purity_2x2(m: &[crate::linalg::C64; 4]) -> f64 {
    m.iter().map(|v| v.norm_sqr()).sum()
}

/// Meyer–Wallach measure Q = 2(1 − n⁻¹ Σ_k Tr ρ_k²) of a pure state.
/// Zero on product states, one on Bell and GHZ states.
pub fn mw_entanglement_pure(psi: &PureState) -> Result<f64> {
    let n = psi.n_qubits();
    if n < 2 {
        return Err(Error::TooFewQubits { n, needed: 2 });
    }
    let mut acc = 0.0;
    for w in 0..n {
        acc += purity_2x2(&psi.reduced_single(w)?);
    }
    Ok(2.0 * (1.0 - acc / n as f64))
}

/// Meyer–Wallach measure extended to mixed states through the spectral
/// decomposition: Σ_i p_i Q(ψ_i) over eigenpairs with p_i above a small
/// cutoff. Coincides with the pure measure on rank-one states. Degenerate
/// spectra make the decomposition (and hence the value) basis-dependent;
/// noisy circuit outputs are generically non-degenerate.
pub fn entanglement_of_formation(rho: &DensityOperator) -> Result<f64> {
    let n = rho.n_qubits();
    if n < 2 {
        return Err(Error::TooFewQubits { n, needed: 2 });
    }
    let mut acc = 0.0;
    for (p, psi) in rho.eigen_pure_states(EIGENVALUE_CUTOFF) {
        acc += p * mw_entanglement_pure(&psi)?;
    }
    Ok(acc)
}

/// Entanglement of the state the model prepares for input `x`, using the
/// pure measure when no incoherent channel is active and the spectral
/// extension otherwise.
pub fn state_entanglement(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    params: &[f64],
    x: &[f64],
    draw: &CgeDraw,
) -> Result<f64> {
    if noise.needs_density() {
        let rho = sim::run_density(layout, noise, params, x, draw)?;
        entanglement_of_formation(&rho)
    } else {
        let psi = sim::run_pure(layout, params, x, draw)?;
        mw_entanglement_pure(&psi)
    }
}

/// Which entanglement functional an estimate is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntanglementMeasure {
    /// Meyer–Wallach on the pure output state; only valid when no
    /// incoherent channel forces a mixed state.
    Mw,
    /// Spectral-decomposition extension evaluated on the density
    /// operator; agrees with `Mw` on rank-one states.
    Ef,
}

impl fmt::Display for EntanglementMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntanglementMeasure::Mw => "mw",
            EntanglementMeasure::Ef => "ef",
        })
    }
}

impl FromStr for EntanglementMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mw" => Ok(EntanglementMeasure::Mw),
            "ef" => Ok(EntanglementMeasure::Ef),
            other => Err(Error::InvalidInput(format!(
                "unknown entanglement measure `{other}` (expected mw or ef)"
            ))),
        }
    }
}

/// Entangling-capability summary over a batch of parameter draws.
#[derive(Clone, Copy, Debug)]
pub struct EntanglementReport {
    pub measure: EntanglementMeasure,
    pub mean_q: f64,
    pub min_q: f64,
    pub max_q: f64,
    pub n_samples: usize,
}

/// Mean, min and max state entanglement over `n_samples` uniform
/// parameter draws, under the requested measure. `Mw` demands a pure
/// output path; `Ef` always runs the density path, so it can score
/// noiseless circuits too (useful for comparing the two measures at
/// zero noise).
pub fn entangling_capability(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    measure: EntanglementMeasure,
    n_samples: usize,
    master_seed: u64,
) -> Result<EntanglementReport> {
    if n_samples == 0 {
        return Err(Error::NotEnoughSamples { needed: 1, got: 0 });
    }
    if measure == EntanglementMeasure::Mw && noise.needs_density() {
        return Err(Error::InvalidInput(
            "the Meyer-Wallach measure needs a pure output state; \
             use the formation measure under incoherent noise"
                .into(),
        ));
    }
    let x = vec![0.0; layout.n_features()];
    let values: Vec<Result<f64>> = parallel::map_collect(n_samples, |i| {
        let (thetas, draw) = draw_instance(layout, noise, master_seed, tags::ENTANGLE, i as u64);
        match measure {
            EntanglementMeasure::Mw => {
                let psi = sim::run_pure(layout, &thetas, &x, &draw)?;
                mw_entanglement_pure(&psi)
            }
            EntanglementMeasure::Ef => {
                let rho = sim::run_density(layout, noise, &thetas, &x, &draw)?;
                entanglement_of_formation(&rho)
            }
        }
    });
    let mut mean = 0.0;
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for v in values {
        let q = v?;
        mean += q;
        min = min.min(q);
        max = max.max(q);
    }
    Ok(EntanglementReport {
        measure,
        mean_q: mean / n_samples as f64,
        min_q: min,
        max_q: max,
        n_samples,
    })
}
