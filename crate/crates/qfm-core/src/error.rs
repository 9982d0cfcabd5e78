use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {wire} out of range for {n} qubits")]
    WireOutOfRange { wire: usize, n: usize },
    #[error("duplicate wire {wire} in gate target list")]
    DuplicateWire { wire: usize },
    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NonUnitary { deviation: f64 },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },
    #[error("Kraus channel is not complete (max deviation {deviation:e})")]
    IncompleteChannel { deviation: f64 },
    #[error("probability {value} outside [0, 1]")]
    InvalidProbability { value: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown ansatz kind `{0}`")]
    UnknownAnsatz(String),
    #[error("sampling grid violates the Nyquist bound (need at least {needed} points, got {got})")]
    NyquistViolation { needed: usize, got: usize },
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("coefficient samples do not share a frequency grid")]
    SpectrumMismatch,
    #[error("need at least {needed} samples, got {got}")]
    NotEnoughSamples { needed: usize, got: usize },
    #[error("measure undefined for {n} qubit(s); need at least {needed}")]
    TooFewQubits { n: usize, needed: usize },
    #[error("training diverged at step {step} (loss {loss})")]
    Divergence { step: usize, loss: f64 },
    #[error("unknown gradient method `{0}`")]
    UnknownGradientMethod(String),
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
