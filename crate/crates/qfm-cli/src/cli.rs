//! Command-line surface: subcommands and flags.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "qfm",
    version,
    about = "Noise studies on quantum Fourier models: spectra, coefficients, \
             expressibility, entanglement and training sweeps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Report the analytic frequency spectrum and its redundancies
    Spectrum(SpectrumArgs),
    /// Sweep Fourier-coefficient statistics over noise kinds and levels
    Coeffs(CoeffsArgs),
    /// Sweep expressibility (KL divergence to the Haar baseline)
    Expressibility(ExpressibilityArgs),
    /// Sweep entangling capability (Meyer-Wallach / formation measure)
    Entanglement(EntanglementArgs),
    /// Train models against random Fourier-series targets under noise
    Train(TrainArgs),
    /// Reshape a finished run directory into per-figure plot tables
    PlotData(PlotDataArgs),
}

/// Circuit template options shared by every computing subcommand.
#[derive(Args, Clone, Debug)]
pub struct CircuitArgs {
    /// Ansatz template: sea, hea, c15 or c19 (identity and rotations are
    /// debug templates)
    #[arg(long, default_value = "sea")]
    pub ansatz: String,

    /// Number of qubits
    #[arg(long, default_value_t = 4)]
    pub qubits: usize,

    /// Number of encoding/trainable layer repetitions
    #[arg(long, default_value_t = 1)]
    pub layers: usize,

    /// Encoding rotation axis letters, one per feature: x, y, z or e.g. xy
    #[arg(long)]
    pub encoding: Option<String>,

    /// Number of input features (defaults to the encoding length, else 1)
    #[arg(long)]
    pub features: Option<usize>,
}

/// Noise sweep options shared by the sampling and training subcommands.
#[derive(Args, Clone, Debug)]
pub struct NoiseArgs {
    /// Comma-separated noise kinds to sweep: bf, pf, dp, ad, pd, sp, me,
    /// cge, or none for a noiseless-only arm
    #[arg(long, default_value = "dp")]
    pub noise: String,

    /// Comma-separated noise levels (default 0 to 0.03 in 0.005 steps)
    #[arg(long)]
    pub levels: Option<String>,

    /// Which gates coherent errors perturb: enc, train or both
    #[arg(long, default_value = "both")]
    pub cge_scope: String,
}

/// Seeding and output options shared by every computing subcommand.
#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    /// Comma-separated seed list (default 0-4 for sampling sweeps, 0-2
    /// for training)
    #[arg(long)]
    pub seeds: Option<String>,

    /// Full published-protocol budgets (250·2^n parameter draws, ten
    /// training seeds) instead of the quick desk-scale defaults
    #[arg(long)]
    pub paper_scale: bool,

    /// Output directory
    #[arg(long, default_value = "qfm-results")]
    pub out: PathBuf,

    /// Master seed; every per-cell random stream derives from it
    #[arg(long, default_value_t = 42)]
    pub master_seed: u64,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,

    /// Output directory
    #[arg(long, default_value = "qfm-results")]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CoeffsArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub run: RunArgs,

    /// Parameter draws per seed (default 50; paper scale 250·2^n)
    #[arg(long)]
    pub samples: Option<usize>,

    /// Sampling-window stretch factor; >1 resolves fractional frequencies
    #[arg(long, default_value_t = 1)]
    pub oversample: u32,
}

#[derive(Args, Debug)]
pub struct ExpressibilityArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub run: RunArgs,

    /// Fidelity histogram bins
    #[arg(long, default_value_t = 75)]
    pub bins: usize,

    /// Random state pairs per estimate
    #[arg(long, default_value_t = 5000)]
    pub pairs: usize,
}

#[derive(Args, Debug)]
pub struct EntanglementArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub run: RunArgs,

    /// Parameter draws per estimate (default 50; paper scale 250·2^n)
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TrainArgs {
    #[command(flatten)]
    pub circuit: CircuitArgs,
    #[command(flatten)]
    pub noise: NoiseArgs,
    #[command(flatten)]
    pub run: RunArgs,

    /// Optimizer steps per run
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,

    /// Adam learning rate
    #[arg(long, default_value_t = 0.01)]
    pub lr: f64,
}

#[derive(Args, Debug)]
pub struct PlotDataArgs {
    /// Run directory to read (the --out of earlier subcommands); plot
    /// tables land in its plots/ subdirectory
    #[arg(long, default_value = "qfm-results")]
    pub out: PathBuf,

    /// Also render rudimentary SVG line plots (best effort; failures
    /// never change the exit status)
    #[arg(long)]
    pub images: bool,
}
