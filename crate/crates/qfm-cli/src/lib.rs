//! Command-line front end for the Fourier-model noise study.
//!
//! Library form of the `qfm` binary so integration tests can drive the
//! same dispatch path in-process. [`run`] applies the `QFM_THREADS`
//! thread cap and forwards to [`dispatch`]; outputs are byte-identical
//! for any cap because every cell derives its random streams from its
//! own seeds and rows are assembled in deterministic order.

pub mod cli;
pub mod config;
pub mod ops;
pub mod plot;
pub mod runner;
pub mod table;

use anyhow::{Context, Result};
use cli::{Cli, Command};
use runner::RunOutcome;

/// Environment variable capping the worker thread count (0 = sequential).
pub const THREADS_ENV: &str = "QFM_THREADS";

/// Run a parsed invocation under the configured thread cap.
pub fn run(cli: &Cli) -> Result<RunOutcome> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .with_context(|| format!("{THREADS_ENV} must be a non-negative integer, got `{v}`"))?,
        Err(_) => 0,
    };
    qfm_core::parallel::with_thread_cap(threads, || dispatch(cli))
}

/// Route one subcommand to its implementation.
pub fn dispatch(cli: &Cli) -> Result<RunOutcome> {
    match &cli.command {
        Command::Spectrum(args) => ops::spectrum::run(args),
        Command::Coeffs(args) => ops::coefficients::run(args),
        Command::Expressibility(args) => ops::expressibility::run(args),
        Command::Entanglement(args) => ops::entanglement::run(args),
        Command::Train(args) => ops::train::run(args),
        Command::PlotData(args) => ops::plotdata::run(args),
    }
}
