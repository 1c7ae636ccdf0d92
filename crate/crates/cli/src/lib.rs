//! Pipeline orchestration for the `herdscope` command: corpus validation,
//! scoring, the full analysis bundle and SVG plots.

pub mod commands;
pub mod emit;
pub mod error;
pub mod plot;

pub use commands::{cmd_analyze, cmd_plot, cmd_score, cmd_validate, Outcome, RunArgs};
pub use error::{CliError, EXIT_DATA, EXIT_IO, EXIT_OK};
