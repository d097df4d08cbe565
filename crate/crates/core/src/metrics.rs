//! Regret, best responses, equilibrium distance and allocation summaries.
//!
//! All quantities use normalized battle values, so a player's per-round loss
//! lies in `[0, 1]` and the two players' losses sum to exactly one.

use crate::engine::{EngineConfig, LossMatrix};
use crate::error::{BlottoError, Result};
use crate::game::{Allocation, GameSpec, Player};

/// Regret snapshot taken every `checkpoint_every` rounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub round: u64,
    pub regret: [f64; 2],
    pub total_regret: f64,
    pub eq_distance: Option<f64>,
}

/// Everything recorded about one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub spec: GameSpec,
    pub config: EngineConfig,
    /// Player whose strategy was held fixed, if any.
    pub fixed: Option<Allocation>,
    /// `histograms[p][j * (n_p + 1) + m]` counts rounds where player `p`
    /// sent `m` soldiers to battle `j`.
    pub histograms: [Vec<u64>; 2],
    /// Sum over rounds of each player's realized loss.
    pub incurred: [f64; 2],
    /// Standard cumulative loss matrices over played rounds (no warm start).
    pub history: [LossMatrix; 2],
    pub checkpoints: Vec<Checkpoint>,
    pub rounds_played: u64,
    pub warm_rounds: u64,
    /// The stopping tolerance was met before `max_rounds`.
    pub converged: bool,
    /// Count of non-finite log-partition values seen over the run.
    pub nonfinite_partition_values: u64,
    /// Per-round allocations, when requested.
    pub trace: Option<Vec<[Vec<u32>; 2]>>,
}

impl RunRecord {
    pub fn histogram(&self, player: Player) -> &[u64] {
        &self.histograms[player.index()]
    }

    pub fn final_checkpoint(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }

    pub fn learner(&self) -> Option<Player> {
        self.fixed.as_ref().map(|f| f.owner().opponent())
    }

    pub fn marginals(&self, player: Player) -> MarginalProfile {
        MarginalProfile::from_histogram(
            self.histogram(player),
            self.spec.k(),
            self.spec.capacity(player),
        )
    }

    /// Mean realized loss per round.
    pub fn average_loss(&self, player: Player) -> f64 {
        self.incurred[player.index()] / self.rounds_played as f64
    }
}

/// Per-battle distributions of the amount a mixed strategy sends.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalProfile {
    rows: Vec<Vec<f64>>,
}

impl MarginalProfile {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        for row in &rows {
            let sum: f64 = row.iter().sum();
            if row.iter().any(|p| *p < 0.0 || !p.is_finite()) || (sum - 1.0).abs() > 1e-9 {
                return Err(BlottoError::InvalidAllocation(
                    "marginal rows must be probability vectors".into(),
                ));
            }
        }
        Ok(MarginalProfile { rows })
    }

    pub fn from_histogram(hist: &[u64], battles: usize, capacity: u32) -> Self {
        let width = capacity as usize + 1;
        let rows = hist
            .chunks(width)
            .take(battles)
            .map(|row| {
                let total: u64 = row.iter().sum();
                row.iter().map(|&c| c as f64 / total.max(1) as f64).collect()
            })
            .collect();
        MarginalProfile { rows }
    }

    /// Point mass on a single allocation.
    pub fn pure(alloc: &Allocation, capacity: u32) -> Self {
        let rows = alloc
            .amounts()
            .iter()
            .map(|&a| {
                let mut row = vec![0.0; capacity as usize + 1];
                row[a as usize] = 1.0;
                row
            })
            .collect();
        MarginalProfile { rows }
    }

    pub fn row(&self, battle: usize) -> &[f64] {
        &self.rows[battle]
    }

    pub fn battles(&self) -> usize {
        self.rows.len()
    }

    pub fn means(&self) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(m, p)| m as f64 * p).sum())
            .collect()
    }
}

/// Total loss of each player when `alloc1` meets `alloc2`.
pub fn incurred_loss(spec: &GameSpec, alloc1: &Allocation, alloc2: &Allocation) -> (f64, f64) {
    (0..spec.k()).fold((0.0, 0.0), |(l1, l2), j| {
        let pair = spec.loss_pair(j, alloc1[j], alloc2[j]);
        (l1 + pair.loss1, l2 + pair.loss2)
    })
}

/// Minimum of `Σ_j L(j, s_j)` over all compositions `s` of the matrix's capacity.
///
/// Among minimizers the lexicographically smallest allocation is returned,
/// which for an all-zero matrix is `[0, …, 0, n]`.
pub fn best_response_value(loss: &LossMatrix) -> (f64, Allocation) {
    let k = loss.battles();
    let width = loss.capacity() as usize + 1;
    // suffix[j][m]: best loss of battles j.. using exactly m soldiers
    let mut suffix = vec![0.0; k * width];
    suffix[(k - 1) * width..].copy_from_slice(loss.row(k - 1));
    for j in (0..k - 1).rev() {
        for m in 0..width {
            let mut best = f64::INFINITY;
            for y in 0..=m {
                let c = loss.get(j, y) + suffix[(j + 1) * width + m - y];
                if c < best {
                    best = c;
                }
            }
            suffix[j * width + m] = best;
        }
    }

    let mut amounts = vec![0u32; k];
    let mut residual = width - 1;
    for j in 0..k - 1 {
        let target = suffix[j * width + residual];
        let y = (0..=residual)
            .find(|&y| loss.get(j, y) + suffix[(j + 1) * width + residual - y] == target)
            .expect("minimizer exists");
        amounts[j] = y as u32;
        residual -= y;
    }
    amounts[k - 1] = residual as u32;
    (suffix[width - 1], Allocation::from_amounts(amounts, loss.owner()))
}

/// Average realized loss minus the best fixed allocation in hindsight, both
/// over `rounds` rounds. `loss` must be the standard cumulative matrix.
///
/// An adaptive sequence of plays can beat every fixed allocation, so the raw
/// difference may be negative; it is reported as zero.
pub fn regret_from(incurred: f64, loss: &LossMatrix, rounds: u64) -> f64 {
    signed_regret(incurred, loss, rounds).max(0.0)
}

/// [`regret_from`] without the clamp at zero.
pub fn signed_regret(incurred: f64, loss: &LossMatrix, rounds: u64) -> f64 {
    if rounds == 0 {
        return 0.0;
    }
    let (best, _) = best_response_value(loss);
    (incurred - best) / rounds as f64
}

/// Regret of `player` in `record`, measured against `loss`.
pub fn regret(player: Player, record: &RunRecord, loss: &LossMatrix) -> f64 {
    regret_from(record.incurred[player.index()], loss, record.rounds_played)
}

/// Expected loss of each player, each player's best-response loss against
/// the other's average strategy, and the resulting exploitability gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct Exploitability {
    pub expected: [f64; 2],
    pub best_response: [f64; 2],
    pub gaps: [f64; 2],
}

/// Builds each player's per-battle expected loss against the opponent's
/// marginals and solves the best-response DP on it. Per-battle separability
/// makes this `O(k·n1·n2)` instead of a sum over pairs of rounds.
pub fn exploitability(
    spec: &GameSpec,
    profile1: &MarginalProfile,
    profile2: &MarginalProfile,
) -> Exploitability {
    let k = spec.k();
    let [n1, n2] = spec.capacities();
    let mut rows1 = vec![vec![0.0; n1 as usize + 1]; k];
    let mut rows2 = vec![vec![0.0; n2 as usize + 1]; k];
    let mut expected = [0.0; 2];
    for j in 0..k {
        let mu = profile1.row(j);
        let nu = profile2.row(j);
        for (a, &pa) in mu.iter().enumerate() {
            for (b, &pb) in nu.iter().enumerate() {
                let pair = spec.loss_pair(j, a as u32, b as u32);
                rows1[j][a] += pb * pair.loss1;
                rows2[j][b] += pa * pair.loss2;
                expected[0] += pa * pb * pair.loss1;
                expected[1] += pa * pb * pair.loss2;
            }
        }
    }
    let m1 = LossMatrix::from_rows(Player::One, &rows1).expect("finite rows");
    let m2 = LossMatrix::from_rows(Player::Two, &rows2).expect("finite rows");
    let best_response = [best_response_value(&m1).0, best_response_value(&m2).0];
    let gaps = [
        (expected[0] - best_response[0]).max(0.0),
        (expected[1] - best_response[1]).max(0.0),
    ];
    Exploitability {
        expected,
        best_response,
        gaps,
    }
}

/// Distance of the average strategy pair from equilibrium: the larger of the
/// two players' gains from deviating to a best response.
pub fn equilibrium_distance(
    spec: &GameSpec,
    profile1: &MarginalProfile,
    profile2: &MarginalProfile,
) -> f64 {
    let e = exploitability(spec, profile1, profile2);
    e.gaps[0].max(e.gaps[1])
}

/// The smaller of the two exploitability gaps.
pub fn equilibrium_distance_min(
    spec: &GameSpec,
    profile1: &MarginalProfile,
    profile2: &MarginalProfile,
) -> f64 {
    let e = exploitability(spec, profile1, profile2);
    e.gaps[0].min(e.gaps[1])
}

/// Histogram-weighted mean soldiers per battle.
pub fn average_allocation(record: &RunRecord, player: Player) -> Vec<f64> {
    record.marginals(player).means()
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
