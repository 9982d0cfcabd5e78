//! Shared run scaffolding: output directory, config echo, manifest and
//! failure marker.
//!
//! Lifecycle: [`OpContext::start`] creates the directory and writes
//! `config.json` before any cell computes; artifacts are registered as
//! they are written; [`OpContext::finish`] writes the failure marker (or
//! clears a stale one) and `manifest.json`. The process exit status is
//! non-zero exactly when any cell failed, while rows from the cells that
//! succeeded stay on disk.

use crate::table;
use anyhow::{Context, Result};
use qfm_core::circuit::CircuitLayout;
use qfm_core::noise::{CgeDraw, NoiseModel};
use qfm_core::rng::{self, tags};
use rand::Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Name of the marker file listing failed cells.
pub const FAILURE_MARKER: &str = "FAILED";

/// What a finished subcommand hands back to `main`.
#[derive(Debug)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    pub artifacts: Vec<PathBuf>,
    /// One human-readable line per failed cell; empty means success.
    pub failures: Vec<String>,
}

impl RunOutcome {
    pub fn success(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Reproducibility manifest written next to every artifact set.
#[derive(Serialize)]
struct RunManifest<'a> {
    config_hash: String,
    seeds: &'a [u64],
    artifacts: Vec<String>,
    wall_clock_seconds: f64,
    version: &'static str,
}

pub struct OpContext {
    out: PathBuf,
    artifacts: Vec<PathBuf>,
    config_hash: String,
    started: Instant,
}

impl OpContext {
    /// Create the output directory and echo the resolved config before
    /// any computation.
    pub fn start<C: Serialize>(out: &Path, config: &C) -> Result<Self> {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        let marker = out.join(FAILURE_MARKER);
        if marker.exists() {
            fs::remove_file(&marker)
                .with_context(|| format!("clearing stale {}", marker.display()))?;
        }
        let mut json = serde_json::to_string_pretty(config)?;
        json.push('\n');
        let config_path = out.join("config.json");
        fs::write(&config_path, &json)
            .with_context(|| format!("writing {}", config_path.display()))?;
        let config_hash = format!("{:x}", Sha256::digest(json.as_bytes()));
        Ok(Self {
            out: out.to_path_buf(),
            artifacts: vec![config_path],
            config_hash,
            started: Instant::now(),
        })
    }

    pub fn out_dir(&self) -> &Path {
        &self.out
    }

    pub fn write_csv(&mut self, name: &str, header: &str, rows: &[String]) -> Result<PathBuf> {
        let path = self.out.join(name);
        table::write_csv(&path, header, rows)?;
        self.artifacts.push(path.clone());
        Ok(path)
    }

    pub fn write_text(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.out.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.artifacts.push(path.clone());
        Ok(path)
    }

    pub fn write_json<V: Serialize>(&mut self, name: &str, value: &V) -> Result<PathBuf> {
        let path = self.out.join(name);
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
        self.artifacts.push(path.clone());
        Ok(path)
    }

    /// Write the failure marker (if any cell failed) and the manifest,
    /// then report the outcome.
    pub fn finish(mut self, seeds: &[u64], failures: Vec<String>) -> Result<RunOutcome> {
        if !failures.is_empty() {
            let marker = self.out.join(FAILURE_MARKER);
            let mut body = String::new();
            for line in &failures {
                body.push_str(line);
                body.push('\n');
            }
            fs::write(&marker, body)
                .with_context(|| format!("writing {}", marker.display()))?;
            self.artifacts.push(marker);
        }
        let manifest = RunManifest {
            config_hash: self.config_hash.clone(),
            seeds,
            artifacts: self
                .artifacts
                .iter()
                .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
                .collect(),
            wall_clock_seconds: self.started.elapsed().as_secs_f64(),
            version: env!("CARGO_PKG_VERSION"),
        };
        let path = self.out.join("manifest.json");
        let mut json = serde_json::to_string_pretty(&manifest)?;
        json.push('\n');
        fs::write(&path, json).with_context(|| format!("writing {}", path.display()))?;
        self.artifacts.push(path);
        Ok(RunOutcome {
            out_dir: self.out,
            artifacts: self.artifacts,
            failures,
        })
    }
}

/// Per-seed master: every stream a cell uses derives from this, so cells
/// are order-independent and reruns are bit-identical.
pub fn cell_master(master_seed: u64, seed: u64) -> u64 {
    rng::derive_seed(master_seed, &[seed])
}

/// Parameter draw `index` for a cell: angles uniform over [0, 2π) per
/// trainable slot, then the coherent-error draw from the same stream.
pub fn theta_instance(
    layout: &CircuitLayout,
    noise: &NoiseModel,
    cell_master: u64,
    index: u64,
) -> (Vec<f64>, CgeDraw) {
    let mut r = rng::stream(cell_master, &[tags::THETA, index]);
    let thetas = (0..layout.n_trainable)
        .map(|_| r.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    let draw = CgeDraw::sample(
        layout.n_trainable,
        layout.n_encoding_gates,
        noise.coherent_gate_error,
        noise.cge_scope,
        &mut r,
    );
    (thetas, draw)
}

/// Split per-cell results into ordered successful row blocks and
/// formatted failure lines.
pub fn split_results(
    results: Vec<std::result::Result<Vec<String>, String>>,
) -> (Vec<String>, Vec<String>) {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(mut block) => rows.append(&mut block),
            Err(line) => failures.push(line),
        }
    }
    (rows, failures)
}
