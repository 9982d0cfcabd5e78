//! `spectrum`: analytic frequency content of a circuit template.

use crate::cli::SpectrumArgs;
use crate::config::CircuitConfig;
use crate::runner::{OpContext, RunOutcome};
use crate::table::fmt_omega;
use anyhow::Result;
use qfm_core::fourier;
use serde::Serialize;

#[derive(Serialize)]
struct SpectrumEcho {
    subcommand: &'static str,
    version: &'static str,
    ansatz: String,
    qubits: usize,
    layers: usize,
    encoding: String,
    features: usize,
}

#[derive(Serialize)]
struct SpectrumReport {
    qubits: usize,
    layers: usize,
    features: usize,
    max_frequency: i64,
    /// Distinct frequencies along one feature axis: 2nL + 1.
    frequencies_per_axis: usize,
    /// Total frequency vectors: (2nL + 1)^D.
    frequency_count: usize,
    /// Σ_ω |R(ω)| along one axis: 4^(nL) index pairs.
    pairs_per_axis: u64,
    frequencies: Vec<Vec<i64>>,
    redundancies: Vec<u64>,
}

pub fn run(args: &SpectrumArgs) -> Result<RunOutcome> {
    let circuit = CircuitConfig::resolve(&args.circuit)?;
    let layout = circuit.layout()?;
    let echo = SpectrumEcho {
        subcommand: "spectrum",
        version: env!("CARGO_PKG_VERSION"),
        ansatz: circuit.ansatz.to_string(),
        qubits: circuit.qubits,
        layers: circuit.layers,
        encoding: circuit.encoding.to_string(),
        features: circuit.encoding.n_features(),
    };
    let mut ctx = OpContext::start(&args.out, &echo)?;

    let spectrum = fourier::analytic_spectrum(&layout);
    let per_axis = (2 * spectrum.max_frequency + 1) as usize;
    let report = SpectrumReport {
        qubits: circuit.qubits,
        layers: circuit.layers,
        features: spectrum.n_features,
        max_frequency: spectrum.max_frequency,
        frequencies_per_axis: per_axis,
        frequency_count: spectrum.frequencies.len(),
        pairs_per_axis: spectrum.total_pairs_per_feature(),
        frequencies: spectrum.frequencies.clone(),
        redundancies: spectrum.redundancies.clone(),
    };
    ctx.write_json("spectrum.json", &report)?;

    let rows: Vec<String> = spectrum
        .frequencies
        .iter()
        .zip(&spectrum.redundancies)
        .map(|(freq, r)| {
            let label: Vec<f64> = freq.iter().map(|&w| w as f64).collect();
            format!("{},{}", fmt_omega(&label), r)
        })
        .collect();
    ctx.write_csv("redundancy.csv", "omega,redundancy", &rows)?;

    ctx.finish(&[], Vec::new())
}
