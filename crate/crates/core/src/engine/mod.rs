//! The sampled MWU learner and the two-player repeated-play driver.

mod config;
mod loss_matrix;
mod partition;
mod run;

pub use config::{EngineConfig, UpdateRule, WarmStart};
pub use loss_matrix::LossMatrix;
pub use partition::{
    compute_partition, sample_allocation, sample_fresh, step_weights, LogPartitionTable,
};
pub use run::{player_rng, run, run_self_play, run_vs_fixed, warm_start};
