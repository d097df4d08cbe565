//! Approximate Nash equilibria of generalized ("electoral") Colonel Blotto
//! games by sampled multiplicative weights.
//!
//! Each player's mixed strategy is never stored explicitly. The learner
//! keeps a cumulative loss matrix `L(j, m)` over (battle, amount) pairs; the
//! MWU weight of an allocation `s` is `β^{Σ_j L(j, s_j)}`, and a
//! partition-function DP over integer compositions lets it draw allocations
//! from that distribution exactly in `O(k·n²)` per round.
//!
//! ```
//! use blotto::{EngineConfig, GameSpec, WinningRule, run_self_play};
//!
//! let spec = GameSpec::new(vec![1.0, 2.0, 3.0], 6, 6, WinningRule::PopularVote).unwrap();
//! let config = EngineConfig { max_rounds: 1_000, seed: 7, ..Default::default() };
//! let record = run_self_play(&spec, &config).unwrap();
//! assert_eq!(record.rounds_played, 1_000);
//! ```

pub mod data;
pub mod engine;
mod error;
pub mod game;
pub mod logspace;
pub mod metrics;
pub mod oracle;

pub use engine::{
    compute_partition, run_self_play, run_vs_fixed, sample_allocation, step_weights,
    EngineConfig, LogPartitionTable, LossMatrix, UpdateRule, WarmStart,
};
pub use error::{BlottoError, Result};
pub use game::{Allocation, GameSpec, LossPair, Player, WinningRule};
pub use metrics::{Checkpoint, MarginalProfile, RunRecord};
