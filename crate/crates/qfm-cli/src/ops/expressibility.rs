//! `expressibility`: KL divergence to the Haar fidelity baseline over a
//! noise sweep. Layouts are stripped to a single trainable block, the
//! standard protocol for expressibility scoring.

use crate::cli::ExpressibilityArgs;
use crate::config::{CircuitConfig, ConfigEcho, NoiseConfig, RunConfig};
use crate::runner::{self, OpContext, RunOutcome};
use crate::table::{fmt_key, fmt_value};
use anyhow::Result;
use qfm_core::metrics;
use qfm_core::noise::NoiseModel;
use qfm_core::parallel;

pub const CSV_NAME: &str = "expressibility.csv";
pub const CSV_HEADER: &str =
    "seed,noise_type,noise_level,n_qubits,ansatz,kl_divergence,n_bins,n_pairs";

struct Cell {
    token: String,
    level: f64,
    seed: u64,
    model: NoiseModel,
}

pub fn run(args: &ExpressibilityArgs) -> Result<RunOutcome> {
    let circuit = CircuitConfig::resolve(&args.circuit)?;
    let noise = NoiseConfig::resolve(&args.noise)?;
    let run = RunConfig::resolve(&args.run, 5)?;
    let layout = circuit.layout()?.strip_for_metrics();

    let mut echo = ConfigEcho::new("expressibility", &circuit, &noise, &run);
    echo.bins = Some(args.bins);
    echo.pairs = Some(args.pairs);
    let mut ctx = OpContext::start(&run.out, &echo)?;

    if args.pairs < args.bins {
        eprintln!(
            "warning: {} pairs cannot populate {} bins; the KL estimate will be biased high",
            args.pairs, args.bins
        );
    }

    let mut cells = Vec::new();
    for arm in &noise.arms {
        for &level in arm.levels(&noise.levels) {
            for &seed in &run.seeds {
                cells.push(Cell {
                    token: arm.token(),
                    level,
                    seed,
                    model: arm.model(level, noise.cge_scope),
                });
            }
        }
    }

    let ansatz = circuit.ansatz.to_string();
    let results = parallel::map_collect(cells.len(), |i| {
        let cell = &cells[i];
        let cell_master = runner::cell_master(run.master_seed, cell.seed);
        metrics::expressibility(&layout, &cell.model, args.bins, args.pairs, cell_master)
            .map(|report| {
                vec![format!(
                    "{},{},{},{},{},{},{},{}",
                    cell.seed,
                    cell.token,
                    fmt_key(cell.level),
                    layout.n_qubits,
                    ansatz,
                    fmt_value(report.kl_divergence),
                    report.n_bins,
                    report.n_pairs,
                )]
            })
            .map_err(|e| {
                format!(
                    "expressibility noise={} level={} seed={}: {e}",
                    cell.token, cell.level, cell.seed
                )
            })
    });
    let (rows, failures) = runner::split_results(results);
    ctx.write_csv(CSV_NAME, CSV_HEADER, &rows)?;
    ctx.finish(&run.seeds, failures)
}
