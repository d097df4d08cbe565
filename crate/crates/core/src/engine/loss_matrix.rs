use crate::error::{BlottoError, Result};
use crate::game::{Allocation, GameSpec, Player};

/// Cumulative loss `L(j, m)` of sending `m` soldiers to battle `j`, stored
/// row-major with one row per battle and `n_owner + 1` columns.
#[derive(Debug, Clone, PartialEq)]
pub struct LossMatrix {
    owner: Player,
    battles: usize,
    width: usize,
    entries: Vec<f64>,
    rounds_absorbed: u64,
    last_round: Vec<f64>,
}

impl LossMatrix {
    pub fn zeros(owner: Player, battles: usize, capacity: u32) -> Self {
        let width = capacity as usize + 1;
        LossMatrix {
            owner,
            battles,
            width,
            entries: vec![0.0; battles * width],
            rounds_absorbed: 0,
            last_round: vec![0.0; battles * width],
        }
    }

    /// Builds a matrix from explicit rows (one per battle, equal lengths).
    pub fn from_rows(owner: Player, rows: &[Vec<f64>]) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if width == 0 {
            return Err(BlottoError::InvalidGame("loss matrix needs at least one column".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != width) {
            return Err(BlottoError::LengthMismatch(bad.len(), width));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(BlottoError::InvalidGame("loss entries must be finite".into()));
        }
        let mut m = LossMatrix::zeros(owner, rows.len(), (width - 1) as u32);
        m.entries = rows.concat();
        Ok(m)
    }

    /// The loss incurred by `player` in one round against `opponent`, over
    /// every `(battle, own amount)` pair.
    pub fn single_round(spec: &GameSpec, player: Player, opponent: &Allocation) -> Self {
        let mut m = LossMatrix::zeros(player, spec.k(), spec.capacity(player));
        let width = m.width;
        for (j, row) in m.entries.chunks_mut(width).enumerate() {
            spec.loss_row(player, j, opponent[j], row);
        }
        m
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn battles(&self) -> usize {
        self.battles
    }

    /// Capacity of the owner, `width - 1`.
    pub fn capacity(&self) -> u32 {
        (self.width - 1) as u32
    }

    pub fn rounds_absorbed(&self) -> u64 {
        self.rounds_absorbed
    }

    pub fn get(&self, battle: usize, amount: usize) -> f64 {
        self.entries[battle * self.width + amount]
    }

    pub fn row(&self, battle: usize) -> &[f64] {
        &self.entries[battle * self.width..(battle + 1) * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.width)
    }

    pub fn last_round(&self) -> &[f64] {
        &self.last_round
    }

    /// Adds `shift` to every entry of row `battle`.
    pub fn shift_row(&mut self, battle: usize, shift: f64) {
        let w = self.width;
        self.entries[battle * w..(battle + 1) * w]
            .iter_mut()
            .for_each(|x| *x += shift);
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|x| *x *= factor);
        out
    }

    /// Total cumulative loss of a full allocation, `Σ_j L(j, s_j)`.
    pub fn allocation_loss(&self, amounts: &[u32]) -> f64 {
        amounts
            .iter()
            .enumerate()
            .map(|(j, &m)| self.get(j, m as usize))
            .sum()
    }

    fn round_losses(&self, spec: &GameSpec, opponent: &Allocation) -> Vec<f64> {
        LossMatrix::single_round(spec, self.owner, opponent).entries
    }

    /// `L += ℓ_t` where `ℓ_t` is the loss against this round's opponent move.
    pub fn update_standard(&mut self, spec: &GameSpec, opponent: &Allocation) {
        let current = self.round_losses(spec, opponent);
        self.absorb_standard(current);
    }

    /// `L += 2ℓ_t − ℓ_{t−1}`, with `ℓ_0 = 0`.
    pub fn update_optimistic(&mut self, spec: &GameSpec, opponent: &Allocation) {
        let current = self.round_losses(spec, opponent);
        self.absorb_optimistic(current);
    }

    pub(crate) fn absorb_standard(&mut self, current: Vec<f64>) {
        for (e, c) in self.entries.iter_mut().zip(&current) {
            *e += c;
        }
        self.last_round = current;
        self.rounds_absorbed += 1;
    }

    pub(crate) fn absorb_optimistic(&mut self, current: Vec<f64>) {
        for ((e, c), p) in self.entries.iter_mut().zip(&current).zip(&self.last_round) {
            *e += 2.0 * c - p;
        }
        self.last_round = current;
        self.rounds_absorbed += 1;
    }

    /// Adds `rounds` copies of `single` and counts them as absorbed.
    pub(crate) fn preload(&mut self, single: &LossMatrix, rounds: u64) {
        for (e, s) in self.entries.iter_mut().zip(&single.entries) {
            *e += rounds as f64 * s;
        }
        self.rounds_absorbed += rounds;
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}
