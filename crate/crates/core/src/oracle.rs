//! Brute-force ground truth for tiny instances: every composition is listed
//! and weighed explicitly. Used to check the partition DP, the sampler and
//! the best-response DP.

use std::collections::HashMap;

use crate::engine::LossMatrix;
use crate::error::{BlottoError, Result};
use crate::game::Allocation;
use crate::logspace::{binomial, logsumexp};

/// Largest instance the oracle will enumerate.
pub const MAX_COMPOSITIONS: u128 = 1_000_000;

/// All compositions of `n` into `k` non-negative parts, lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionSet {
    n: u32,
    k: usize,
    items: Vec<Vec<u32>>,
}

impl CompositionSet {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn items(&self) -> &[Vec<u32>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn index_map(&self) -> HashMap<&[u32], usize> {
        self.items
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i))
            .collect()
    }
}

pub fn composition_count(n: u32, k: usize) -> Option<u128> {
    if k == 0 {
        return Some(u128::from(n == 0));
    }
    binomial(n as u64 + k as u64 - 1, k as u64 - 1)
}

pub fn enumerate_compositions(n: u32, k: usize) -> Result<CompositionSet> {
    let count = composition_count(n, k).unwrap_or(u128::MAX);
    if count > MAX_COMPOSITIONS {
        return Err(BlottoError::TooLarge {
            count,
            limit: MAX_COMPOSITIONS,
        });
    }
    let mut items = Vec::with_capacity(count as usize);
    let mut current = vec![0u32; k];
    fill(&mut current, 0, n, &mut items);
    Ok(CompositionSet { n, k, items })
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for a in 0..=remaining {
        current[pos] = a;
        fill(current, pos + 1, remaining - a, out);
    }
}

/// Unnormalized log-weights `ln β · Σ_j L(j, s_j)`, aligned with a [`CompositionSet`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitWeights {
    pub log_weights: Vec<f64>,
}

impl ExplicitWeights {
    pub fn compute(loss: &LossMatrix, beta: f64, set: &CompositionSet) -> Self {
        let ln_beta = beta.ln();
        let log_weights = set
            .items()
            .iter()
            .map(|s| ln_beta * s.iter().enumerate().map(|(j, &m)| loss.get(j, m as usize)).sum::<f64>())
            .collect();
        ExplicitWeights { log_weights }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let norm = logsumexp(&self.log_weights);
        self.log_weights.iter().map(|w| (w - norm).exp()).collect()
    }
}

/// Explicit MWU distribution over every composition of the loss matrix's capacity.
pub fn explicit_distribution(loss: &LossMatrix, beta: f64) -> Result<(CompositionSet, Vec<f64>)> {
    let set = enumerate_compositions(loss.capacity(), loss.battles())?;
    let probs = ExplicitWeights::compute(loss, beta, &set).probabilities();
    Ok((set, probs))
}

/// Conditional distribution of the amount on `battle` when `residual`
/// soldiers are spread over battles `0..=battle`, by enumerating those
/// sub-compositions directly.
pub fn explicit_step_weights(
    loss: &LossMatrix,
    beta: f64,
    battle: usize,
    residual: u32,
) -> Result<Vec<f64>> {
    let set = enumerate_compositions(residual, battle + 1)?;
    let probs = ExplicitWeights::compute(loss, beta, &set).probabilities();
    let mut marginal = vec![0.0; residual as usize + 1];
    for (s, p) in set.items().iter().zip(probs) {
        marginal[s[battle] as usize] += p;
    }
    Ok(marginal)
}

/// Scans every composition for the minimum cumulative loss. Ties keep the
/// lexicographically first composition.
pub fn exhaustive_best_response(loss: &LossMatrix) -> Result<(f64, Allocation)> {
    let set = enumerate_compositions(loss.capacity(), loss.battles())?;
    let mut best: Option<(f64, &Vec<u32>)> = None;
    for s in set.items() {
        // right-to-left, matching the association order of the suffix DP
        let total = s
            .iter()
            .enumerate()
            .rev()
            .fold(None, |acc: Option<f64>, (j, &m)| {
                let l = loss.get(j, m as usize);
                Some(acc.map_or(l, |a| l + a))
            })
            .unwrap_or(0.0);
        if best.is_none_or(|(b, _)| total < b) {
            best = Some((total, s));
        }
    }
    let (value, s) = best.expect("at least one composition");
    Ok((value, Allocation::from_amounts(s.clone(), loss.owner())))
}

/// Empirical distribution of `samples` over `set`.
pub fn empirical_distribution<'a, I>(set: &CompositionSet, samples: I) -> Vec<f64>
where
    I: IntoIterator<Item = &'a [u32]>,
{
    let index = set.index_map();
    let mut counts = vec![0u64; set.len()];
    let mut total = 0u64;
    for s in samples {
        counts[index[s]] += 1;
        total += 1;
    }
    counts.iter().map(|&c| c as f64 / total.max(1) as f64).collect()
}

/// `½ Σ |p − q|`.
pub fn tv_distance(p: &[f64], q: &[f64]) -> Result<f64> {
    if p.len() != q.len() {
        return Err(BlottoError::LengthMismatch(p.len(), q.len()));
    }
    Ok(0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>())
}
