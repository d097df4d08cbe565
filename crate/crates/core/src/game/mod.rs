//! Game definitions: battles, capacities, winning rules and the closed-form
//! reference allocations.

mod allocation;
mod rules;

use std::sync::OnceLock;

pub use allocation::{
    largest_remainder, proportional_allocation, three_halves_allocation, three_halves_weights,
    uniform_allocation, weighted_targets, Allocation,
};
pub use rules::{
    ev_threshold, ev_win_probability, loss_electoral_vote, loss_popular_vote, loss_zero_one,
    LossPair, Player, WinningRule,
};

use crate::error::{BlottoError, Result};
use crate::logspace::ln_factorials;

/// Default undecided-voter scale `C`; the smallest even value.
pub const DEFAULT_VOTER_SCALE: u32 = 2;

/// A two-player Blotto game with a chosen winning rule.
///
/// Battle values are kept as given for reporting and normalized to sum to one
/// for play, so per-round total loss always lies in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct GameSpec {
    values: Vec<f64>,
    normalized: Vec<f64>,
    capacities: [u32; 2],
    rule: WinningRule,
    voter_scale: u32,
    advantages: Vec<f64>,
    undecided: Vec<u32>,
    // player-1 loss fraction per (battle, a, b), electoral rule only
    ev_table: OnceLock<Vec<f64>>,
}

impl PartialEq for GameSpec {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values
            && self.capacities == other.capacities
            && self.rule == other.rule
            && self.voter_scale == other.voter_scale
            && self.advantages == other.advantages
    }
}

impl GameSpec {
    pub fn new(values: Vec<f64>, n1: u32, n2: u32, rule: WinningRule) -> Result<Self> {
        if values.is_empty() {
            return Err(BlottoError::InvalidGame("at least one battle is required".into()));
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(BlottoError::InvalidGame(format!("battle value {v} is not positive")));
        }
        let total: f64 = values.iter().sum();
        let normalized = values.iter().map(|v| v / total).collect();
        let k = values.len();
        let mut spec = GameSpec {
            values,
            normalized,
            capacities: [n1, n2],
            rule,
            voter_scale: DEFAULT_VOTER_SCALE,
            advantages: vec![0.0; k],
            undecided: Vec::new(),
            ev_table: OnceLock::new(),
        };
        spec.undecided = spec.compute_undecided();
        Ok(spec)
    }

    pub fn with_voter_scale(mut self, scale: u32) -> Result<Self> {
        if scale < 2 || !scale.is_multiple_of(2) {
            return Err(BlottoError::VoterCount(scale));
        }
        self.voter_scale = scale;
        self.undecided = self.compute_undecided();
        self.ev_table = OnceLock::new();
        Ok(self)
    }

    /// Per-battle advantages of player 1, in percent.
    pub fn with_advantages(mut self, advantages: Vec<f64>) -> Result<Self> {
        if advantages.len() != self.values.len() {
            return Err(BlottoError::LengthMismatch(advantages.len(), self.values.len()));
        }
        if let Some(d) = advantages.iter().find(|d| !(d.is_finite() && d.abs() < 100.0)) {
            return Err(BlottoError::InvalidGame(format!("advantage {d} outside (-100, 100)")));
        }
        self.advantages = advantages;
        self.ev_table = OnceLock::new();
        Ok(self)
    }

    pub fn with_capacities(mut self, n1: u32, n2: u32) -> Self {
        self.capacities = [n1, n2];
        self.ev_table = OnceLock::new();
        self
    }

    // u_j = C·v_j on the raw values, snapped to an even count of at least 2.
    fn compute_undecided(&self) -> Vec<u32> {
        self.values
            .iter()
            .map(|v| {
                let half = (self.voter_scale as f64 * v / 2.0).round().max(1.0);
                2 * half as u32
            })
            .collect()
    }

    pub fn k(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn normalized_values(&self) -> &[f64] {
        &self.normalized
    }

    pub fn capacity(&self, player: Player) -> u32 {
        self.capacities[player.index()]
    }

    pub fn capacities(&self) -> [u32; 2] {
        self.capacities
    }

    pub fn rule(&self) -> WinningRule {
        self.rule
    }

    pub fn voter_scale(&self) -> u32 {
        self.voter_scale
    }

    pub fn advantages(&self) -> &[f64] {
        &self.advantages
    }

    /// Undecided voters `u_j` per battle (electoral rule).
    pub fn undecided(&self) -> &[u32] {
        &self.undecided
    }

    fn ev_fractions(&self) -> &[f64] {
        self.ev_table.get_or_init(|| {
            let [n1, n2] = self.capacities;
            let max_u = self.undecided.iter().copied().max().unwrap_or(2);
            let ln_fact = ln_factorials(max_u as usize);
            let mut table = Vec::with_capacity(self.k() * (n1 as usize + 1) * (n2 as usize + 1));
            for j in 0..self.k() {
                let u = self.undecided[j];
                let tau = ev_threshold(u, self.advantages[j]);
                for a in 0..=n1 {
                    for b in 0..=n2 {
                        let win = rules::ev_win_probability_unchecked(a, b, u, tau, Some(&ln_fact));
                        table.push(1.0 - win);
                    }
                }
            }
            table
        })
    }

    /// Losses on battle `battle` (normalized value) when player 1 sends `a`
    /// and player 2 sends `b` soldiers.
    pub fn loss_pair(&self, battle: usize, a: u32, b: u32) -> LossPair {
        let v = self.normalized[battle];
        match self.rule {
            WinningRule::ZeroOne => loss_zero_one(a, b, v),
            WinningRule::PopularVote => loss_popular_vote(a, b, v),
            WinningRule::ElectoralVote => {
                let [n1, n2] = self.capacities;
                let fraction = if a <= n1 && b <= n2 {
                    let stride = n2 as usize + 1;
                    let idx = (battle * (n1 as usize + 1) + a as usize) * stride + b as usize;
                    self.ev_fractions()[idx]
                } else {
                    let u = self.undecided[battle];
                    let tau = ev_threshold(u, self.advantages[battle]);
                    1.0 - rules::ev_win_probability_unchecked(a, b, u, tau, None)
                };
                LossPair::from_fraction(v, fraction)
            }
        }
    }

    /// Loss to `player` for sending `own` soldiers to `battle` against `opponent`.
    pub fn loss(&self, player: Player, battle: usize, own: u32, opponent: u32) -> f64 {
        match player {
            Player::One => self.loss_pair(battle, own, opponent).loss1,
            Player::Two => self.loss_pair(battle, opponent, own).loss2,
        }
    }

    /// Writes `player`'s loss on `battle` for every own amount `0..=n_player`
    /// against a fixed opponent amount.
    pub fn loss_row(&self, player: Player, battle: usize, opponent: u32, out: &mut [f64]) {
        for (m, slot) in out.iter_mut().enumerate() {
            *slot = self.loss(player, battle, m as u32, opponent);
        }
    }

    /// Checks that `alloc` is a valid strategy for `player` in this game.
    pub fn validate(&self, alloc: &Allocation, player: Player) -> Result<()> {
        Allocation::new(alloc.amounts().to_vec(), player, self.k(), self.capacity(player))
            .map(|_| ())
    }

    pub fn proportional(&self, player: Player) -> Allocation {
        proportional_allocation(&self.values, self.capacity(player), player)
    }

    pub fn three_halves(&self, player: Player) -> Allocation {
        three_halves_allocation(&self.values, self.capacity(player), player)
    }

    pub fn uniform(&self, player: Player) -> Allocation {
        uniform_allocation(self.k(), self.capacity(player), player)
    }
}
