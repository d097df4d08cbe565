use std::ops::Index;

use crate::error::{BlottoError, Result};
use crate::game::Player;

/// One pure strategy: soldiers per battle, summing to the owner's capacity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    amounts: Vec<u32>,
    owner: Player,
}

impl Allocation {
    /// Checks that `amounts` is a composition of `capacity` over `battles` battles.
    pub fn new(amounts: Vec<u32>, owner: Player, battles: usize, capacity: u32) -> Result<Self> {
        if amounts.len() != battles {
            return Err(BlottoError::InvalidAllocation(format!(
                "expected {battles} battles, got {}",
                amounts.len()
            )));
        }
        let total: u64 = amounts.iter().map(|&a| a as u64).sum();
        if total != capacity as u64 {
            return Err(BlottoError::InvalidAllocation(format!(
                "allocation sums to {total}, capacity is {capacity}"
            )));
        }
        Ok(Allocation { amounts, owner })
    }

    /// Builds an allocation whose capacity is whatever the amounts sum to.
    pub fn from_amounts(amounts: Vec<u32>, owner: Player) -> Self {
        Allocation { amounts, owner }
    }

    pub fn amounts(&self) -> &[u32] {
        &self.amounts
    }

    pub fn owner(&self) -> Player {
        self.owner
    }

    pub fn total(&self) -> u32 {
        self.amounts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.amounts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amounts.is_empty()
    }

    pub fn with_owner(mut self, owner: Player) -> Self {
        self.owner = owner;
        self
    }
}

impl Index<usize> for Allocation {
    type Output = u32;

    fn index(&self, battle: usize) -> &u32 {
        &self.amounts[battle]
    }
}

/// Rounds `n · w_j / Σw` to integers summing to `n` by the largest-remainder
/// method. Ties in the fractional part go to the lowest battle index.
pub fn largest_remainder(weights: &[f64], n: u32) -> Vec<u32> {
    let total: f64 = weights.iter().sum();
    let targets: Vec<f64> = weights.iter().map(|w| n as f64 * w / total).collect();
    let mut out: Vec<u32> = targets.iter().map(|t| t.floor() as u32).collect();
    let assigned: u32 = out.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&i, &j| {
        let fi = targets[i] - targets[i].floor();
        let fj = targets[j] - targets[j].floor();
        fj.total_cmp(&fi).then(i.cmp(&j))
    });
    for &i in order.iter().take(n.saturating_sub(assigned) as usize) {
        out[i] += 1;
    }
    out
}

/// Real-valued targets `n · w_j / Σw` before rounding.
pub fn weighted_targets(weights: &[f64], n: u32) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights.iter().map(|w| n as f64 * w / total).collect()
}

pub fn three_halves_weights(values: &[f64]) -> Vec<f64> {
    values.iter().map(|v| v.powf(1.5)).collect()
}

pub fn proportional_allocation(values: &[f64], n: u32, owner: Player) -> Allocation {
    Allocation::from_amounts(largest_remainder(values, n), owner)
}

pub fn three_halves_allocation(values: &[f64], n: u32, owner: Player) -> Allocation {
    Allocation::from_amounts(largest_remainder(&three_halves_weights(values), n), owner)
}

/// `⌊n/k⌋` everywhere, remainder one each to the lowest indices.
pub fn uniform_allocation(k: usize, n: u32, owner: Player) -> Allocation {
    let base = n / k as u32;
    let extra = (n % k as u32) as usize;
    let amounts = (0..k).map(|j| base + u32::from(j < extra)).collect();
    Allocation::from_amounts(amounts, owner)
}
