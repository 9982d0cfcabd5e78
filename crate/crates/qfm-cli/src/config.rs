//! Resolution of raw flags into validated, serializable run configs.
//!
//! Every run echoes its fully resolved config to `config.json` before any
//! computation starts, and the manifest records the SHA-256 of those
//! bytes, so an output directory always identifies the exact settings
//! that produced it.

use crate::cli;
use anyhow::{bail, Context, Result};
use qfm_core::circuit::{build_circuit, AnsatzKind, CircuitLayout, EncodingSpec};
use qfm_core::noise::{CgeScope, NoiseKind, NoiseModel};
use serde::Serialize;
use std::path::PathBuf;

/// The published protocol's noise-level grid: 0% to 3% in 0.5% steps.
pub const DEFAULT_LEVELS: [f64; 7] = [0.0, 0.005, 0.01, 0.015, 0.02, 0.025, 0.03];

/// Desk-scale parameter draws per seed.
pub const DESK_SAMPLES: usize = 50;

/// One sweep arm: a specific channel, or the noiseless baseline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseArm {
    None,
    Kind(NoiseKind),
}

impl NoiseArm {
    pub fn token(&self) -> String {
        match self {
            NoiseArm::None => "none".into(),
            NoiseArm::Kind(k) => k.to_string(),
        }
    }

    /// Levels this arm sweeps: the configured grid, or just zero for the
    /// noiseless arm.
    pub fn levels<'a>(&self, grid: &'a [f64]) -> &'a [f64] {
        match self {
            NoiseArm::None => &[0.0],
            NoiseArm::Kind(_) => grid,
        }
    }

    pub fn model(&self, level: f64, scope: CgeScope) -> NoiseModel {
        match self {
            NoiseArm::None => NoiseModel::noiseless(),
            NoiseArm::Kind(k) => NoiseModel::single(*k, level, scope),
        }
    }
}

/// Circuit settings shared by all computing subcommands.
#[derive(Clone, Debug)]
pub struct CircuitConfig {
    pub ansatz: AnsatzKind,
    pub qubits: usize,
    pub layers: usize,
    pub encoding: EncodingSpec,
}

impl CircuitConfig {
    pub fn resolve(args: &cli::CircuitArgs) -> Result<Self> {
        let ansatz: AnsatzKind = args.ansatz.parse()?;
        let encoding = match (&args.encoding, args.features) {
            (Some(s), features) => {
                let spec: EncodingSpec = s.parse()?;
                if let Some(d) = features {
                    if spec.n_features() != d {
                        bail!(
                            "--encoding {} defines {} feature(s) but --features is {}",
                            s,
                            spec.n_features(),
                            d
                        );
                    }
                }
                spec
            }
            (None, Some(d)) => EncodingSpec::default_for(d),
            (None, None) => EncodingSpec::default_for(1),
        };
        Ok(Self {
            ansatz,
            qubits: args.qubits,
            layers: args.layers,
            encoding,
        })
    }

    pub fn layout(&self) -> Result<CircuitLayout> {
        Ok(build_circuit(
            self.ansatz,
            self.qubits,
            self.layers,
            self.encoding.clone(),
        )?)
    }
}

/// Noise sweep settings shared by all sweeping subcommands.
#[derive(Clone, Debug)]
pub struct NoiseConfig {
    pub arms: Vec<NoiseArm>,
    pub levels: Vec<f64>,
    pub cge_scope: CgeScope,
}

impl NoiseConfig {
    pub fn resolve(args: &cli::NoiseArgs) -> Result<Self> {
        let mut arms = Vec::new();
        for token in args.noise.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let arm = if token == "none" {
                NoiseArm::None
            } else {
                NoiseArm::Kind(token.parse::<NoiseKind>()?)
            };
            if !arms.contains(&arm) {
                arms.push(arm);
            }
        }
        if arms.is_empty() {
            bail!("--noise must name at least one of bf,pf,dp,ad,pd,sp,me,cge,none");
        }
        let levels = match &args.levels {
            Some(list) => parse_f64_list(list).context("parsing --levels")?,
            None => DEFAULT_LEVELS.to_vec(),
        };
        if levels.is_empty() {
            bail!("--levels must name at least one level");
        }
        let cge_scope = match args.cge_scope.as_str() {
            "enc" => CgeScope::Encoding,
            "train" => CgeScope::Trainable,
            "both" => CgeScope::Both,
            other => bail!("unknown --cge-scope `{other}` (expected enc, train or both)"),
        };
        // surface invalid probabilities before any cell runs
        for arm in &arms {
            for &level in arm.levels(&levels) {
                arm.model(level, cge_scope).validate()?;
            }
        }
        Ok(Self {
            arms,
            levels,
            cge_scope,
        })
    }

    pub fn scope_token(&self) -> &'static str {
        match self.cge_scope {
            CgeScope::Encoding => "enc",
            CgeScope::Trainable => "train",
            CgeScope::Both => "both",
        }
    }
}

/// Seed list plus output destination.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub seeds: Vec<u64>,
    pub paper_scale: bool,
    pub out: PathBuf,
    pub master_seed: u64,
}

impl RunConfig {
    pub fn resolve(args: &cli::RunArgs, default_seed_count: u64) -> Result<Self> {
        let seeds = match &args.seeds {
            Some(list) => parse_u64_list(list).context("parsing --seeds")?,
            None => (0..default_seed_count).collect(),
        };
        if seeds.is_empty() {
            bail!("--seeds must name at least one seed");
        }
        Ok(Self {
            seeds,
            paper_scale: args.paper_scale,
            out: args.out.clone(),
            master_seed: args.master_seed,
        })
    }

    /// Parameter draws per seed: an explicit flag wins, then the
    /// paper-scale budget of 250·2^n, then the desk default of 50.
    pub fn samples(&self, explicit: Option<usize>, n_qubits: usize) -> usize {
        match explicit {
            Some(s) => s,
            None if self.paper_scale => 250usize.saturating_mul(1usize << n_qubits),
            None => DESK_SAMPLES,
        }
    }
}

fn parse_f64_list(list: &str) -> Result<Vec<f64>> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("bad number `{t}`")))
        .collect()
}

fn parse_u64_list(list: &str) -> Result<Vec<u64>> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().with_context(|| format!("bad seed `{t}`")))
        .collect()
}

/// The JSON shape echoed to `config.json`. Tokens rather than enums so
/// the file reads the same way the flags were typed.
#[derive(Serialize)]
pub struct ConfigEcho {
    pub subcommand: &'static str,
    pub version: &'static str,
    pub ansatz: String,
    pub qubits: usize,
    pub layers: usize,
    pub encoding: String,
    pub features: usize,
    pub observable: &'static str,
    pub noise: Vec<String>,
    pub levels: Vec<f64>,
    pub cge_scope: String,
    pub seeds: Vec<u64>,
    pub master_seed: u64,
    pub paper_scale: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oversample: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bins: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
}

impl ConfigEcho {
    pub fn new(
        subcommand: &'static str,
        circuit: &CircuitConfig,
        noise: &NoiseConfig,
        run: &RunConfig,
    ) -> Self {
        Self {
            subcommand,
            version: env!("CARGO_PKG_VERSION"),
            ansatz: circuit.ansatz.to_string(),
            qubits: circuit.qubits,
            layers: circuit.layers,
            encoding: circuit.encoding.to_string(),
            features: circuit.encoding.n_features(),
            observable: "mean_z",
            noise: noise.arms.iter().map(NoiseArm::token).collect(),
            levels: noise.levels.clone(),
            cge_scope: noise.scope_token().into(),
            seeds: run.seeds.clone(),
            master_seed: run.master_seed,
            paper_scale: run.paper_scale,
            samples: None,
            oversample: None,
            bins: None,
            pairs: None,
            steps: None,
            learning_rate: None,
        }
    }
}
