use std::fmt;
use std::str::FromStr;

use crate::error::{BlottoError, Result};

/// Reference allocation the opponent is assumed to have played before round 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WarmStart {
    None,
    Uniform,
    Proportional,
    ThreeHalves,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateRule {
    /// `L += ℓ_t`
    Standard,
    /// `L += 2ℓ_t − ℓ_{t−1}`
    Optimistic,
}

impl FromStr for WarmStart {
    type Err = BlottoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(WarmStart::None),
            "uniform" => Ok(WarmStart::Uniform),
            "proportional" => Ok(WarmStart::Proportional),
            "three-halves" => Ok(WarmStart::ThreeHalves),
            other => Err(BlottoError::InvalidConfig(format!("unknown warm start `{other}`"))),
        }
    }
}

impl fmt::Display for WarmStart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WarmStart::None => "none",
            WarmStart::Uniform => "uniform",
            WarmStart::Proportional => "proportional",
            WarmStart::ThreeHalves => "three-halves",
        })
    }
}

impl FromStr for UpdateRule {
    type Err = BlottoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(UpdateRule::Standard),
            "optimistic" => Ok(UpdateRule::Optimistic),
            other => Err(BlottoError::InvalidConfig(format!("unknown update rule `{other}`"))),
        }
    }
}

impl fmt::Display for UpdateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpdateRule::Standard => "standard",
            UpdateRule::Optimistic => "optimistic",
        })
    }
}

/// Learner and stopping parameters for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineConfig {
    /// Multiplicative factor per unit of loss, in `(0, 1)`.
    pub beta: f64,
    pub max_rounds: u64,
    /// Stop once the driving regret is at or below this value.
    pub epsilon: f64,
    pub checkpoint_every: u64,
    pub warm_start: WarmStart,
    /// Synthetic rounds pre-loaded by the warm start. Not counted in `max_rounds`
    /// nor in regret.
    pub warm_rounds: u64,
    pub update_rule: UpdateRule,
    pub seed: u64,
    /// Upper bound on one round's total loss; 1 with normalized values.
    pub loss_max: f64,
    /// Compute the exact equilibrium distance at every checkpoint.
    pub eq_distance: bool,
    /// Keep every round's pair of allocations in the record.
    pub keep_trace: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            beta: 0.995,
            max_rounds: 100_000,
            epsilon: 0.0,
            checkpoint_every: 100,
            warm_start: WarmStart::None,
            warm_rounds: 0,
            update_rule: UpdateRule::Standard,
            seed: 0,
            loss_max: 1.0,
            eq_distance: false,
            keep_trace: false,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(BlottoError::InvalidConfig(format!("beta {} not in (0, 1)", self.beta)));
        }
        if self.max_rounds == 0 {
            return Err(BlottoError::InvalidConfig("max_rounds must be at least 1".into()));
        }
        if self.checkpoint_every == 0 {
            return Err(BlottoError::InvalidConfig("checkpoint_every must be at least 1".into()));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(BlottoError::InvalidConfig(format!("epsilon {} invalid", self.epsilon)));
        }
        if !(self.loss_max > 0.0 && self.loss_max.is_finite()) {
            return Err(BlottoError::InvalidConfig(format!("loss_max {} invalid", self.loss_max)));
        }
        Ok(())
    }

    /// `ln(β^{T·L_max})`: the log of the smallest weight a linear-domain
    /// implementation would have to store after `max_rounds` rounds.
    pub fn smallest_weight_ln(&self) -> f64 {
        self.max_rounds as f64 * self.loss_max * self.beta.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = EngineConfig::default();
        c.validate().unwrap();
        assert_eq!(c.checkpoint_every, 100);
        assert_eq!(c.beta, 0.995);
        assert_eq!(c.max_rounds, 100_000);
    }

    #[test]
    fn rejects_bad_values() {
        for c in [
            EngineConfig { beta: 1.0, ..Default::default() },
            EngineConfig { beta: 0.0, ..Default::default() },
            EngineConfig { max_rounds: 0, ..Default::default() },
            EngineConfig { checkpoint_every: 0, ..Default::default() },
            EngineConfig { epsilon: -0.1, ..Default::default() },
        ] {
            assert!(c.validate().is_err());
        }
    }

    #[test]
    fn linear_weights_would_underflow() {
        let c = EngineConfig { beta: 0.95, ..Default::default() };
        // 0.95^(10^5) ≈ e^-5129, below f64::MIN_POSITIVE
        assert!(c.smallest_weight_ln() < f64::MIN_POSITIVE.ln());
    }

    #[test]
    fn names_round_trip() {
        for w in [WarmStart::None, WarmStart::Uniform, WarmStart::Proportional, WarmStart::ThreeHalves] {
            assert_eq!(w.to_string().parse::<WarmStart>().unwrap(), w);
        }
        for u in [UpdateRule::Standard, UpdateRule::Optimistic] {
            assert_eq!(u.to_string().parse::<UpdateRule>().unwrap(), u);
        }
    }
}
