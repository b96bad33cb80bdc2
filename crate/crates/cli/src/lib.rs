//! Config-driven experiment runner behind the `dldah` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod model_file;

pub use commands::{run_bench, run_encode, run_eval, run_synth, run_train, run_verify};
pub use config::ExperimentConfig;
pub use error::{CliError, CliResult};
pub use model_file::{HashModel, ModelFile};
