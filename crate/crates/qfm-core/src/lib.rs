//! Density-operator simulation and analysis for quantum Fourier models.
//!
//! The crate simulates variational circuits whose expectation value is a
//! truncated Fourier series in the encoded input features, and quantifies
//! how single-qubit noise channels deform that series. It provides
//!
//! * dense pure-state and density-operator simulation of the four ansätze
//!   ([`circuit`], [`sim`]),
//! * Kraus channels for bit flip, phase flip, depolarisation, amplitude and
//!   phase damping, SPAM placement and coherent gate errors ([`noise`]),
//! * analytic spectra, DFT coefficient extraction and per-frequency
//!   statistics ([`fourier`]),
//! * expressibility and entangling-capability metrics ([`metrics`]),
//! * an Adam training harness on random Fourier-series regression targets
//!   ([`training`]).
//!
//! All sampling is driven by explicit seed streams (see [`rng`]) so results
//! are reproducible bit-for-bit regardless of thread count. Data-parallel
//! loops go through [`parallel`], which uses rayon when the `parallel`
//! feature (default) is enabled and plain iteration otherwise.

pub mod circuit;
pub mod error;
pub mod fourier;
pub mod linalg;
pub mod metrics;
pub mod noise;
pub mod observable;
pub mod parallel;
pub mod rng;
pub mod sim;
pub mod state;
pub mod training;

pub use circuit::{AnsatzKind, CircuitLayout, EncodingAxis, EncodingSpec, GateKind, GateSpec};
pub use error::{Error, Result};
pub use noise::{CgeDraw, CgeScope, KrausChannel, NoiseKind, NoiseModel};
pub use observable::Observable;
pub use state::{DensityOperator, PureState};
