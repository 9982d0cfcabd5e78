use clap::Parser;
use qfm_cli::cli::Cli;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match qfm_cli::run(&cli) {
        Ok(outcome) if outcome.success() => ExitCode::SUCCESS,
        Ok(outcome) => {
            eprintln!(
                "{} cell(s) failed; see {}",
                outcome.failures.len(),
                outcome.out_dir.join(qfm_cli::runner::FAILURE_MARKER).display()
            );
            for line in &outcome.failures {
                eprintln!("  {line}");
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
