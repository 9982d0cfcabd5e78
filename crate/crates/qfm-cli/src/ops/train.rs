//! `train`: Adam regression runs against random Fourier-series targets,
//! swept over noise kinds, levels and a problem-seed × parameter-seed
//! grid.
//!
//! The target depends only on the problem seed and the parameter
//! initialization only on the parameter seed, so arms with different
//! noise settings train the same problems from the same starting points
//! and stay directly comparable.

use crate::cli::TrainArgs;
use crate::config::{CircuitConfig, ConfigEcho, NoiseConfig, RunConfig};
use crate::runner::{OpContext, RunOutcome};
use crate::table::{fmt_key, fmt_value};
use anyhow::{bail, Result};
use qfm_core::noise::NoiseModel;
use qfm_core::observable::Observable;
use qfm_core::parallel;
use qfm_core::rng::{self, tags};
use qfm_core::training::{self, TrainingOptions};

pub const TRAIN_CSV: &str = "training.csv";
pub const TRAIN_HEADER: &str =
    "run_id,problem_seed,param_seed,noise_type,noise_level,step,mse,entangling_q";
pub const TRACE_CSV: &str = "coefficients_trace.csv";
pub const TRACE_HEADER: &str = "run_id,step,omega,abs_c,delta_c";
pub const SUMMARY_CSV: &str = "training_summary.csv";
pub const SUMMARY_HEADER: &str = "noise_type,noise_level,step,mse_mean,mse_std,n_runs";

/// Target normalization: peak |f'| on the training grid.
const TARGET_AMPLITUDE: f64 = 0.5;

struct RunCell {
    token: String,
    level: f64,
    problem_seed: u64,
    param_seed: u64,
    model: NoiseModel,
}

/// Loss curves of one (noise, level) arm, keyed by its rendered tokens.
type ArmCurves = ((String, String), Vec<Vec<f64>>);

struct RunDone {
    arm_key: (String, String),
    train_rows: Vec<String>,
    trace_rows: Vec<String>,
    mses: Vec<f64>,
}

pub fn run(args: &TrainArgs) -> Result<RunOutcome> {
    let circuit = CircuitConfig::resolve(&args.circuit)?;
    let noise = NoiseConfig::resolve(&args.noise)?;
    let run = RunConfig::resolve(&args.run, if args.run.paper_scale { 10 } else { 3 })?;
    let layout = circuit.layout()?;
    if layout.n_features() != 1 {
        bail!("train supports one-dimensional inputs only (got --features {})",
            layout.n_features());
    }

    let mut echo = ConfigEcho::new("train", &circuit, &noise, &run);
    echo.steps = Some(args.steps);
    echo.learning_rate = Some(args.lr);
    let mut ctx = OpContext::start(&run.out, &echo)?;

    let options = TrainingOptions {
        steps: args.steps,
        learning_rate: args.lr,
        ..Default::default()
    };

    let mut cells = Vec::new();
    for arm in &noise.arms {
        for &level in arm.levels(&noise.levels) {
            for &ps in &run.seeds {
                for &qs in &run.seeds {
                    cells.push(RunCell {
                        token: arm.token(),
                        level,
                        problem_seed: ps,
                        param_seed: qs,
                        model: arm.model(level, noise.cge_scope),
                    });
                }
            }
        }
    }

    let max_frequency = (layout.n_qubits * layout.n_layers) as i64;
    let ansatz = circuit.ansatz.to_string();
    let results = parallel::map_collect(cells.len(), |i| {
        let cell = &cells[i];
        run_one(&layout, cell, &options, &ansatz, max_frequency, run.master_seed).map_err(|e| {
            format!(
                "train noise={} level={} problem={} param={}: {e}",
                cell.token, cell.level, cell.problem_seed, cell.param_seed
            )
        })
    });

    let mut train_rows = Vec::new();
    let mut trace_rows = Vec::new();
    let mut failures = Vec::new();
    let mut by_arm: Vec<ArmCurves> = Vec::new();
    for r in results {
        match r {
            Ok(done) => {
                train_rows.extend(done.train_rows);
                trace_rows.extend(done.trace_rows);
                match by_arm.iter_mut().find(|(k, _)| *k == done.arm_key) {
                    Some((_, runs)) => runs.push(done.mses),
                    None => by_arm.push((done.arm_key, vec![done.mses])),
                }
            }
            Err(line) => failures.push(line),
        }
    }

    ctx.write_csv(TRAIN_CSV, TRAIN_HEADER, &train_rows)?;
    ctx.write_csv(TRACE_CSV, TRACE_HEADER, &trace_rows)?;
    ctx.write_csv(SUMMARY_CSV, SUMMARY_HEADER, &summary_rows(&by_arm))?;
    ctx.finish(&run.seeds, failures)
}

fn run_one(
    layout: &qfm_core::circuit::CircuitLayout,
    cell: &RunCell,
    options: &TrainingOptions,
    ansatz: &str,
    max_frequency: i64,
    master_seed: u64,
) -> std::result::Result<RunDone, qfm_core::Error> {
    let mut target_rng = rng::stream(master_seed, &[tags::TARGET, cell.problem_seed]);
    let target = training::generate_target(max_frequency, TARGET_AMPLITUDE, &mut target_rng);
    let run_master = rng::derive_seed(master_seed, &[cell.param_seed]);
    let trace = training::train(
        layout,
        &cell.model,
        Observable::MeanZ,
        &target,
        options,
        run_master,
    )?;

    let run_id = format!(
        "{}-{}-{}-p{}-q{}",
        ansatz,
        cell.token,
        fmt_key(cell.level),
        cell.problem_seed,
        cell.param_seed
    );
    let train_rows = trace
        .records
        .iter()
        .map(|rec| {
            format!(
                "{},{},{},{},{},{},{},{}",
                run_id,
                cell.problem_seed,
                cell.param_seed,
                cell.token,
                fmt_key(cell.level),
                rec.step,
                fmt_value(rec.mse),
                rec.entangling_q.map(fmt_value).unwrap_or_default(),
            )
        })
        .collect();
    let trace_rows = trace
        .coefficient_trace
        .iter()
        .map(|c| {
            format!(
                "{},{},{},{},{}",
                run_id,
                c.step,
                c.omega,
                fmt_value(c.abs_model),
                fmt_value(c.gap),
            )
        })
        .collect();
    let mses = trace.records.iter().map(|r| r.mse).collect();
    Ok(RunDone {
        arm_key: (cell.token.clone(), fmt_key(cell.level)),
        train_rows,
        trace_rows,
        mses,
    })
}

/// Mean and population standard deviation of the loss per step across
/// the seed grid of each (noise, level) arm.
fn summary_rows(by_arm: &[ArmCurves]) -> Vec<String> {
    let mut rows = Vec::new();
    for ((token, level), runs) in by_arm {
        let n_steps = runs.iter().map(Vec::len).min().unwrap_or(0);
        let n = runs.len() as f64;
        for step in 0..n_steps {
            let mean = runs.iter().map(|r| r[step]).sum::<f64>() / n;
            let var = runs
                .iter()
                .map(|r| (r[step] - mean).powi(2))
                .sum::<f64>()
                / n;
            rows.push(format!(
                "{},{},{},{},{},{}",
                token,
                level,
                step,
                fmt_value(mean),
                fmt_value(var.sqrt()),
                runs.len(),
            ));
        }
    }
    rows
}
