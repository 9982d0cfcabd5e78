//! `coeffs`: per-frequency coefficient statistics over a noise sweep.

use crate::cli::CoeffsArgs;
use crate::config::{CircuitConfig, ConfigEcho, NoiseConfig, RunConfig};
use crate::runner::{self, OpContext, RunOutcome};
use crate::table::{fmt_key, fmt_omega, fmt_value};
use anyhow::Result;
use qfm_core::circuit::CircuitLayout;
use qfm_core::fourier::{self, CoefficientSet};
use qfm_core::noise::NoiseModel;
use qfm_core::observable::Observable;
use qfm_core::parallel;

pub const CSV_NAME: &str = "coefficients.csv";
pub const CSV_HEADER: &str =
    "seed,noise_type,noise_level,omega,re_mean,im_mean,abs_mean,rel_std,cov_rr,cov_ri,cov_ii";

struct Cell {
    token: String,
    level: f64,
    seed: u64,
    model: NoiseModel,
}

pub fn run(args: &CoeffsArgs) -> Result<RunOutcome> {
    let circuit = CircuitConfig::resolve(&args.circuit)?;
    let noise = NoiseConfig::resolve(&args.noise)?;
    let run = RunConfig::resolve(&args.run, 5)?;
    let samples = run.samples(args.samples, circuit.qubits);
    let layout = circuit.layout()?;

    let mut echo = ConfigEcho::new("coeffs", &circuit, &noise, &run);
    echo.samples = Some(samples);
    echo.oversample = Some(args.oversample);
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

    let results = parallel::map_collect(cells.len(), |i| {
        let cell = &cells[i];
        cell_rows(&layout, cell, samples, args.oversample, run.master_seed).map_err(|e| {
            format!(
                "coeffs noise={} level={} seed={}: {e}",
                cell.token, cell.level, cell.seed
            )
        })
    });
    let (rows, failures) = runner::split_results(results);
    ctx.write_csv(CSV_NAME, CSV_HEADER, &rows)?;
    ctx.finish(&run.seeds, failures)
}

fn cell_rows(
    layout: &CircuitLayout,
    cell: &Cell,
    samples: usize,
    oversample: u32,
    master_seed: u64,
) -> std::result::Result<Vec<String>, qfm_core::Error> {
    let cell_master = runner::cell_master(master_seed, cell.seed);
    let sets: Vec<qfm_core::Result<CoefficientSet>> = parallel::map_collect(samples, |i| {
        let (thetas, draw) = runner::theta_instance(layout, &cell.model, cell_master, i as u64);
        fourier::extract_coefficients(
            layout,
            &cell.model,
            Observable::MeanZ,
            &thetas,
            &draw,
            oversample,
        )
    });
    let sets: Vec<CoefficientSet> = sets.into_iter().collect::<qfm_core::Result<_>>()?;
    let stats = fourier::coefficient_stats(&sets)?;
    Ok(stats
        .iter()
        .map(|s| {
            format!(
                "{},{},{},{},{},{},{},{},{},{},{}",
                cell.seed,
                cell.token,
                fmt_key(cell.level),
                fmt_omega(&s.frequency),
                fmt_value(s.re_mean),
                fmt_value(s.im_mean),
                fmt_value(s.abs_mean),
                fmt_value(s.rel_std),
                fmt_value(s.cov_rr),
                fmt_value(s.cov_ri),
                fmt_value(s.cov_ii),
            )
        })
        .collect())
}
