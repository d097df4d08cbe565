//! Partition-function DP over integer compositions and backward sampling of
//! allocations from the implicit MWU distribution
//! `P(s) ∝ β^{Σ_j L(j, s_j)}`.
//!
//! Everything is kept in the log domain. `β^{L}` for a loss accumulated over
//! `10^5` rounds is far below the smallest representable double, but its
//! logarithm is an ordinary number.

use rand::Rng;

use crate::engine::LossMatrix;
use crate::game::Allocation;
use crate::logspace::logsumexp;

// Below this the linear-domain convolution may have lost terms to underflow,
// so the entry is recomputed with a per-entry log-sum-exp.
const LINEAR_FLOOR: f64 = 1e-250;

/// `log_f[k'][n']`: log of the total weight of all ways to place `n'`
/// soldiers on the first `k' + 1` battles.
#[derive(Debug, Clone, PartialEq)]
pub struct LogPartitionTable {
    battles: usize,
    width: usize,
    log_f: Vec<f64>,
}

impl LogPartitionTable {
    pub fn compute(loss: &LossMatrix, beta: f64) -> Self {
        let mut table = LogPartitionTable {
            battles: 0,
            width: 0,
            log_f: Vec::new(),
        };
        table.fill(loss, beta);
        table
    }

    /// Recomputes the table in place for a new loss matrix.
    pub fn fill(&mut self, loss: &LossMatrix, beta: f64) {
        let ln_beta = beta.ln();
        let k = loss.battles();
        let width = loss.capacity() as usize + 1;
        self.battles = k;
        self.width = width;
        self.log_f.clear();
        self.log_f.resize(k * width, 0.0);

        for (m, slot) in self.log_f[..width].iter_mut().enumerate() {
            *slot = loss.get(0, m) * ln_beta;
        }

        let mut log_w = vec![0.0; width];
        let mut lin_w = vec![0.0; width];
        let mut lin_prev = vec![0.0; width];
        for battle in 1..k {
            let (done, rest) = self.log_f.split_at_mut(battle * width);
            let prev = &done[(battle - 1) * width..];
            let cur = &mut rest[..width];

            for (m, w) in log_w.iter_mut().enumerate() {
                *w = loss.get(battle, m) * ln_beta;
            }
            let w_max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let p_max = prev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            for m in 0..width {
                lin_w[m] = (log_w[m] - w_max).exp();
                lin_prev[m] = (prev[m] - p_max).exp();
            }

            for (n, out) in cur.iter_mut().enumerate() {
                let s: f64 = (0..=n).map(|y| lin_w[y] * lin_prev[n - y]).sum();
                *out = if s > LINEAR_FLOOR {
                    w_max + p_max + s.ln()
                } else {
                    exact_entry(&log_w, prev, n)
                };
            }
        }
    }

    pub fn battles(&self) -> usize {
        self.battles
    }

    pub fn capacity(&self) -> u32 {
        (self.width - 1) as u32
    }

    /// `log f` for battles `0..=battle` holding `soldiers`.
    pub fn get(&self, battle: usize, soldiers: usize) -> f64 {
        self.log_f[battle * self.width + soldiers]
    }

    /// Log of the total MWU weight over all allocations.
    pub fn log_total(&self) -> f64 {
        self.get(self.battles - 1, self.width - 1)
    }

    pub fn values(&self) -> &[f64] {
        &self.log_f
    }

    pub fn all_finite(&self) -> bool {
        self.log_f.iter().all(|x| x.is_finite())
    }

    pub fn count_nonfinite(&self) -> usize {
        self.log_f.iter().filter(|x| !x.is_finite()).count()
    }
}

fn exact_entry(log_w: &[f64], prev: &[f64], n: usize) -> f64 {
    let terms: Vec<f64> = (0..=n).map(|y| log_w[y] + prev[n - y]).collect();
    logsumexp(&terms)
}

/// Free-function form of [`LogPartitionTable::compute`].
pub fn compute_partition(loss: &LossMatrix, beta: f64) -> LogPartitionTable {
    LogPartitionTable::compute(loss, beta)
}

/// Conditional distribution of the amount sent to `battle` (for `battle ≥ 1`)
/// when `residual` soldiers remain for battles `0..=battle`:
/// `w(y) = β^{L(battle, y)} f_{battle−1}(residual − y) / f_battle(residual)`.
pub fn step_weights(
    loss: &LossMatrix,
    beta: f64,
    table: &LogPartitionTable,
    battle: usize,
    residual: usize,
) -> Vec<f64> {
    assert!(battle >= 1, "battle 0 takes the residual deterministically");
    let ln_beta = beta.ln();
    let norm = table.get(battle, residual);
    (0..=residual)
        .map(|y| (loss.get(battle, y) * ln_beta + table.get(battle - 1, residual - y) - norm).exp())
        .collect()
}

/// Draws one allocation from the MWU distribution encoded by `loss`, walking
/// battles from last to first and giving battle 0 whatever remains.
pub fn sample_allocation<R: Rng + ?Sized>(
    loss: &LossMatrix,
    beta: f64,
    table: &LogPartitionTable,
    rng: &mut R,
) -> Allocation {
    let k = loss.battles();
    let mut amounts = vec![0u32; k];
    let mut residual = loss.capacity() as usize;
    let mut weights = Vec::with_capacity(residual + 1);
    let ln_beta = beta.ln();
    for battle in (1..k).rev() {
        let norm = table.get(battle, residual);
        weights.clear();
        weights.extend((0..=residual).map(|y| {
            (loss.get(battle, y) * ln_beta + table.get(battle - 1, residual - y) - norm).exp()
        }));
        let y = draw(&weights, rng);
        amounts[battle] = y as u32;
        residual -= y;
    }
    amounts[0] = residual as u32;
    Allocation::from_amounts(amounts, loss.owner())
}

fn draw<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let total: f64 = weights.iter().sum();
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0.0 {
            last_positive = i;
        }
        acc += w;
        if target < acc {
            return i;
        }
    }
    last_positive
}

/// Computes a fresh table and draws one allocation from it.
pub fn sample_fresh<R: Rng + ?Sized>(loss: &LossMatrix, beta: f64, rng: &mut R) -> Allocation {
    let table = LogPartitionTable::compute(loss, beta);
    sample_allocation(loss, beta, &table, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zeros(k: usize, n: u32) -> LossMatrix {
        LossMatrix::zeros(Player::One, k, n)
    }

    #[test]
    fn zero_loss_counts_compositions() {
        let t = compute_partition(&zeros(2, 1), 0.7);
        assert!((t.log_total().exp() - 2.0).abs() < 1e-12);
        let t = compute_partition(&zeros(3, 5), 0.7);
        assert!((t.log_total().exp() - 21.0).abs() < 1e-10);
    }

    #[test]
    fn base_row_is_beta_to_the_loss() {
        let m = LossMatrix::from_rows(Player::One, &[vec![0.0, 1.0, 2.0]]).unwrap();
        let t = compute_partition(&m, 0.5);
        let f: Vec<f64> = (0..3).map(|j| t.get(0, j).exp()).collect();
        for (got, want) in f.iter().zip([1.0, 0.5, 0.25]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn uniform_two_battle_sampling() {
        let m = zeros(2, 1);
        let t = compute_partition(&m, 0.9);
        let w = step_weights(&m, 0.9, &t, 1, 1);
        assert!((w[0] - 0.5).abs() < 1e-12 && (w[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn heavy_loss_is_avoided() {
        // compositions (0,2),(1,1),(2,0) weigh 1, 2^-10, 2^-10
        let m = LossMatrix::from_rows(Player::One, &[vec![0.0, 10.0, 10.0], vec![0.0; 3]]).unwrap();
        let t = compute_partition(&m, 0.5);
        let w = step_weights(&m, 0.5, &t, 1, 2);
        // battle 1 gets 2 exactly when battle 0 gets 0
        assert!((w[2] - 1024.0 / 1026.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let hits = (0..20_000)
            .filter(|_| sample_allocation(&m, 0.5, &t, &mut rng)[0] == 0)
            .count();
        assert!((hits as f64 / 20_000.0 - 1024.0 / 1026.0).abs() < 0.005);
    }

    #[test]
    fn underflow_falls_back_to_exact_entries() {
        // Row weights spanning ~e^-3000 would zero the linear convolution.
        let rows = vec![vec![0.0, 60_000.0, 120_000.0], vec![120_000.0, 60_000.0, 0.0]];
        let m = LossMatrix::from_rows(Player::One, &rows).unwrap();
        let t = compute_partition(&m, 0.95);
        assert!(t.all_finite());
        let ln_b = 0.95f64.ln();
        // f_1(1) = β^{L0(0)+L1(1)} + β^{L0(1)+L1(0)}
        let want = logsumexp(&[60_000.0 * ln_b, 180_000.0 * ln_b]);
        assert!((t.get(1, 1) - want).abs() < 1e-9);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = sample_fresh(&m, 0.95, &mut rng);
        assert_eq!(s.amounts(), &[0, 2]);
    }

    #[test]
    fn sampled_allocations_are_compositions() {
        let rows: Vec<Vec<f64>> = (0..4)
            .map(|j| (0..8).map(|m| ((j * 7 + m * 3) % 5) as f64).collect())
            .collect();
        let m = LossMatrix::from_rows(Player::Two, &rows).unwrap();
        let t = compute_partition(&m, 0.8);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let s = sample_allocation(&m, 0.8, &t, &mut rng);
            assert_eq!(s.total(), 7);
            assert_eq!(s.owner(), Player::Two);
        }
    }
}
