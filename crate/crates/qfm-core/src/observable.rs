//! Measurement observables for model outputs.
//!
//! Both supported observables are diagonal in the computational basis, so
//! expectation values reduce to weighted sums over basis populations.

use crate::state::{DensityOperator, PureState};
use serde::{Deserialize, Serialize};

/// Observable measured at the end of the circuit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    /// (1/n) Σ_k Z_k — the default model output.
    #[default]
    MeanZ,
    /// Z⊗…⊗Z parity observable.
    TensorZ,
}

impl Observable {
    /// Diagonal of the observable in the computational basis,
    /// little-endian bit order.
    pub fn diagonal(&self, n: usize) -> Vec<f64> {
        let dim = 1usize << n;
        match self {
            Observable::MeanZ => (0..dim)
                .map(|i| {
                    let mut acc = 0.0;
                    for w in 0..n {
                        acc += 1.0 - 2.0 * (((i >> w) & 1) as f64);
                    }
                    acc / n as f64
                })
                .collect(),
            Observable::TensorZ => (0..dim)
                .map(|i| if (i as u64).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 })
                .collect(),
        }
    }

    pub fn expectation_pure(&self, psi: &PureState) -> f64 {
        psi.expectation_diag(&self.diagonal(psi.n_qubits()))
    }

    pub fn expectation(&self, rho: &DensityOperator) -> f64 {
        rho.expectation_diag(&self.diagonal(rho.n_qubits()))
    }
}
