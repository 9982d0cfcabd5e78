//! `entanglement`: entangling capability over a noise sweep.
//!
//! Pure-path settings (noiseless, coherent-only) report both the
//! Meyer-Wallach row and the formation-measure row so the two can be
//! compared at zero noise; incoherent settings report the formation
//! measure only.

use crate::cli::EntanglementArgs;
use crate::config::{CircuitConfig, ConfigEcho, NoiseConfig, RunConfig};
use crate::runner::{self, OpContext, RunOutcome};
use crate::table::{fmt_key, fmt_value};
use anyhow::{bail, Result};
use qfm_core::metrics::{self, EntanglementMeasure, EntanglementReport};
use qfm_core::noise::NoiseModel;
use qfm_core::parallel;

pub const CSV_NAME: &str = "entanglement.csv";
pub const CSV_HEADER: &str =
    "seed,noise_type,noise_level,n_qubits,ansatz,measure,mean_q,min_q,max_q";

struct Cell {
    token: String,
    level: f64,
    seed: u64,
    model: NoiseModel,
}

pub fn run(args: &EntanglementArgs) -> Result<RunOutcome> {
    let circuit = CircuitConfig::resolve(&args.circuit)?;
    if circuit.qubits < 2 {
        bail!("entanglement needs at least two qubits");
    }
    let noise = NoiseConfig::resolve(&args.noise)?;
    let run = RunConfig::resolve(&args.run, 5)?;
    let samples = run.samples(args.samples, circuit.qubits);
    let layout = circuit.layout()?.strip_for_metrics();

    let mut echo = ConfigEcho::new("entanglement", &circuit, &noise, &run);
    echo.samples = Some(samples);
    let mut ctx = OpContext::start(&run.out, &echo)?;

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
        let fmt_row = |report: &EntanglementReport| {
            format!(
                "{},{},{},{},{},{},{},{},{}",
                cell.seed,
                cell.token,
                fmt_key(cell.level),
                layout.n_qubits,
                ansatz,
                report.measure,
                fmt_value(report.mean_q),
                fmt_value(report.min_q),
                fmt_value(report.max_q),
            )
        };
        let compute = || -> qfm_core::Result<Vec<String>> {
            let mut rows = Vec::new();
            if !cell.model.needs_density() {
                let mw = metrics::entangling_capability(
                    &layout,
                    &cell.model,
                    EntanglementMeasure::Mw,
                    samples,
                    cell_master,
                )?;
                rows.push(fmt_row(&mw));
            }
            let ef = metrics::entangling_capability(
                &layout,
                &cell.model,
                EntanglementMeasure::Ef,
                samples,
                cell_master,
            )?;
            rows.push(fmt_row(&ef));
            Ok(rows)
        };
        compute().map_err(|e| {
            format!(
                "entanglement noise={} level={} seed={}: {e}",
                cell.token, cell.level, cell.seed
            )
        })
    });
    let (rows, failures) = runner::split_results(results);
    ctx.write_csv(CSV_NAME, CSV_HEADER, &rows)?;
    ctx.finish(&run.seeds, failures)
}
