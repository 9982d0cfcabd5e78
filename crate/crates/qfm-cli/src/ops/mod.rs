//! One module per subcommand; each returns a [`crate::runner::RunOutcome`].

pub mod coefficients;
pub mod entanglement;
pub mod expressibility;
pub mod plotdata;
pub mod spectrum;
pub mod train;
