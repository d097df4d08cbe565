use blotto::engine::{compute_partition, sample_allocation, sample_fresh, step_weights};
use blotto::oracle::{empirical_distribution, explicit_distribution, explicit_step_weights, tv_distance};
use blotto::{GameSpec, LossMatrix, Player, Result, WinningRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub compositions: usize,
    pub samples: u64,
    pub tv_distance: f64,
    /// Largest relative error of a per-step weight.
    pub max_weight_error: f64,
}

/// A cumulative 0/1-rule loss matrix for player 1 after `rounds` plays
/// against uniformly random opponent compositions.
pub fn random_cumulative_loss(k: usize, n: u32, rounds: u64, seed: u64) -> Result<LossMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..k).map(|_| rng.random_range(1.0..10.0)).collect();
    let spec = GameSpec::new(values, n, n, WinningRule::ZeroOne)?;
    let uniform = LossMatrix::zeros(Player::Two, k, n);
    let mut loss = LossMatrix::zeros(Player::One, k, n);
    for _ in 0..rounds {
        let opp = sample_fresh(&uniform, 1.0, &mut rng);
        loss.update_standard(&spec, &opp);
    }
    Ok(loss)
}

pub fn oracle_check(loss: &LossMatrix, beta: f64, samples: u64, seed: u64) -> Result<OracleReport> {
    let (set, explicit) = explicit_distribution(loss, beta)?;
    let table = compute_partition(loss, beta);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Vec<u32>> = (0..samples)
        .map(|_| sample_allocation(loss, beta, &table, &mut rng).amounts().to_vec())
        .collect();
    let empirical = empirical_distribution(&set, draws.iter().map(Vec::as_slice));
    let tv = tv_distance(&empirical, &explicit)?;

    let mut max_err = 0.0f64;
    for battle in 1..loss.battles() {
        for residual in 0..=loss.capacity() {
            let engine = step_weights(loss, beta, &table, battle, residual as usize);
            let oracle = explicit_step_weights(loss, beta, battle, residual)?;
            for (e, o) in engine.iter().zip(&oracle) {
                let err = if *o == 0.0 { e.abs() } else { (e - o).abs() / o.abs() };
                max_err = max_err.max(err);
            }
        }
    }
    Ok(OracleReport {
        compositions: set.len(),
        samples,
        tv_distance: tv,
        max_weight_error: max_err,
    })
}
