//! Command-line harness for the `blotto` solver: experiment plans, CSV
//! tables and SVG figures.

mod app;
pub mod args;
pub mod check;
pub mod output;
pub mod svg;
pub mod sweep;

pub use app::{engine_config, run_cli, EXIT_ERROR, EXIT_NOT_CONVERGED, EXIT_OK};
