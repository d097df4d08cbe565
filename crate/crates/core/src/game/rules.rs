//! Winning rules. Each rule maps the two players' allocations to one battle
//! onto a [`LossPair`] whose components always sum to the battle value.

use std::fmt;
use std::str::FromStr;

use crate::error::{BlottoError, Result};
use crate::logspace::ln_binomial;

/// Player 1 or player 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn index(self) -> usize {
        match self {
            Player::One => 0,
            Player::Two => 1,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub const BOTH: [Player; 2] = [Player::One, Player::Two];
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index() + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WinningRule {
    /// Strictly more soldiers wins, ties split by a fair coin.
    ZeroOne,
    /// Battle won with probability proportional to the share of soldiers.
    PopularVote,
    /// Majority of binomially drawn undecided voters wins the battle.
    ElectoralVote,
}

impl FromStr for WinningRule {
    type Err = BlottoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero-one" | "01" | "0/1" => Ok(WinningRule::ZeroOne),
            "pv" | "popular-vote" => Ok(WinningRule::PopularVote),
            "ev" | "electoral-vote" => Ok(WinningRule::ElectoralVote),
            other => Err(BlottoError::InvalidGame(format!("unknown rule `{other}`"))),
        }
    }
}

impl fmt::Display for WinningRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WinningRule::ZeroOne => "zero-one",
            WinningRule::PopularVote => "pv",
            WinningRule::ElectoralVote => "ev",
        })
    }
}

/// Losses of both players on a single battle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossPair {
    pub loss1: f64,
    pub loss2: f64,
}

impl LossPair {
    /// Splits `value` given player 1's loss fraction in `[0, 1]`.
    pub fn from_fraction(value: f64, fraction1: f64) -> Self {
        let loss1 = value * fraction1;
        LossPair {
            loss1,
            loss2: value - loss1,
        }
    }

    pub fn of(&self, player: Player) -> f64 {
        match player {
            Player::One => self.loss1,
            Player::Two => self.loss2,
        }
    }
}

pub fn loss_zero_one(a: u32, b: u32, value: f64) -> LossPair {
    let fraction = match a.cmp(&b) {
        std::cmp::Ordering::Less => 1.0,
        std::cmp::Ordering::Equal => 0.5,
        std::cmp::Ordering::Greater => 0.0,
    };
    LossPair::from_fraction(value, fraction)
}

/// Player 1 loses with probability `b / (a + b)`; an empty battle is a coin flip.
///
/// Note that a player facing zero opposing soldiers loses nothing, following
/// the formula rather than the prose variant that assigns them a full loss.
pub fn loss_popular_vote(a: u32, b: u32, value: f64) -> LossPair {
    let fraction = if a == 0 && b == 0 {
        0.5
    } else {
        b as f64 / (a as f64 + b as f64)
    };
    LossPair::from_fraction(value, fraction)
}

/// Majority threshold for player 1 given `undecided` voters and an advantage
/// of `advantage` percent: `round(u/2 * (1 - δ/100))` clamped to `[0, u]`.
pub fn ev_threshold(undecided: u32, advantage: f64) -> u32 {
    let raw = (undecided as f64 / 2.0 * (1.0 - advantage / 100.0)).round();
    raw.clamp(0.0, undecided as f64) as u32
}

/// Probability that player 1 carries a battle with `undecided` voters, each
/// voting for player 1 with probability `a / (a + b)`. Player 1 wins outright
/// above the threshold and with probability one half exactly at it.
pub fn ev_win_probability(a: u32, b: u32, undecided: u32, advantage: f64) -> Result<f64> {
    if undecided < 2 || !undecided.is_multiple_of(2) {
        return Err(BlottoError::VoterCount(undecided));
    }
    Ok(ev_win_probability_unchecked(
        a,
        b,
        undecided,
        ev_threshold(undecided, advantage),
        None,
    ))
}

/// Core of [`ev_win_probability`]. `ln_fact` may supply a precomputed `ln n!`
/// table covering `undecided`.
pub(crate) fn ev_win_probability_unchecked(
    a: u32,
    b: u32,
    undecided: u32,
    threshold: u32,
    ln_fact: Option<&[f64]>,
) -> f64 {
    if a == 0 && b == 0 {
        return 0.5;
    }
    let u = undecided;
    // Degenerate shares put all mass on X = 0 or X = u.
    let point_mass = |x: u32| {
        if x > threshold {
            1.0
        } else if x == threshold {
            0.5
        } else {
            0.0
        }
    };
    if a == 0 {
        return point_mass(0);
    }
    if b == 0 {
        return point_mass(u);
    }
    // Sum the tail with the smaller share; the mirror uses the complement,
    // so (a, b) and (b, a) share one evaluation.
    if a > b {
        return 1.0 - binomial_upper(b, a, u, u - threshold, ln_fact);
    }
    binomial_upper(a, b, u, threshold, ln_fact)
}

/// `P(X > t) + P(X = t) / 2` for `X ~ Bin(u, a / (a + b))`, with `a, b > 0`.
fn binomial_upper(a: u32, b: u32, u: u32, threshold: u32, ln_fact: Option<&[f64]>) -> f64 {
    let total = a as f64 + b as f64;
    let ln_q = (a as f64 / total).ln();
    let ln_1q = (b as f64 / total).ln();
    let ln_choose = |x: u32| match ln_fact {
        Some(f) => f[u as usize] - f[x as usize] - f[(u - x) as usize],
        None => ln_binomial(u as u64, x as u64),
    };
    let ln_pmf = |x: u32| ln_choose(x) + x as f64 * ln_q + (u - x) as f64 * ln_1q;
    let above: f64 = ((threshold + 1)..=u).map(|x| ln_pmf(x).exp()).sum();
    (above + 0.5 * ln_pmf(threshold).exp()).min(1.0)
}

pub fn loss_electoral_vote(
    a: u32,
    b: u32,
    value: f64,
    undecided: u32,
    advantage: f64,
) -> Result<LossPair> {
    let win = ev_win_probability(a, b, undecided, advantage)?;
    Ok(LossPair::from_fraction(value, 1.0 - win))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn zero_one_examples() {
        assert_eq!(loss_zero_one(3, 5, 1.0).loss1, 1.0);
        assert_eq!(loss_zero_one(2, 2, 1.0).loss1, 0.5);
        assert_eq!(loss_zero_one(5, 3, 0.4).loss1, 0.0);
        assert!(close(loss_zero_one(5, 3, 0.4).loss2, 0.4));
    }

    #[test]
    fn popular_vote_examples() {
        assert_eq!(loss_popular_vote(0, 0, 1.0).loss1, 0.5);
        assert_eq!(loss_popular_vote(3, 1, 1.0).loss1, 0.25);
        assert_eq!(loss_popular_vote(4, 0, 1.0).loss1, 0.0);
        assert_eq!(loss_popular_vote(0, 4, 1.0).loss1, 1.0);
    }

    #[test]
    fn electoral_examples() {
        for c in 1..6 {
            for u in [2, 4, 10, 50] {
                assert!(close(ev_win_probability(c, c, u, 0.0).unwrap(), 0.5));
            }
        }
        // Bin(2, 3/4): P(X=2) + P(X=1)/2 = 0.5625 + 0.1875
        assert!(close(ev_win_probability(3, 1, 2, 0.0).unwrap(), 0.75));
        assert_eq!(ev_win_probability(5, 0, 4, 0.0).unwrap(), 1.0);

        assert!(close(loss_electoral_vote(4, 4, 1.0, 10, 0.0).unwrap().loss1, 0.5));
        assert!(close(loss_electoral_vote(3, 1, 1.0, 2, 0.0).unwrap().loss1, 0.25));
        assert_eq!(loss_electoral_vote(0, 0, 2.0, 4, 0.0).unwrap().loss1, 1.0);
    }

    #[test]
    fn electoral_exact_rationals() {
        // Bin(6, 2/5), threshold 3: P(X>3) + P(X=3)/2 = 992/3125
        assert!(close(ev_win_probability(2, 3, 6, 0.0).unwrap(), 992.0 / 3125.0));
        // u=20, δ=80 → threshold 2; q = 2/3
        assert!(close(ev_win_probability(2, 1, 20, 80.0).unwrap(), 0.9999998792583792));
        assert!(close(ev_win_probability(1, 2, 20, -80.0).unwrap(), 1.2074162081236178e-07));
    }

    #[test]
    fn electoral_rejects_bad_voter_counts() {
        assert!(matches!(ev_win_probability(1, 1, 3, 0.0), Err(BlottoError::VoterCount(3))));
        assert!(ev_win_probability(1, 1, 0, 0.0).is_err());
        assert!(loss_electoral_vote(1, 1, 1.0, 5, 0.0).is_err());
    }

    #[test]
    fn threshold_follows_percentage_advantage() {
        assert_eq!(ev_threshold(10, 0.0), 5);
        assert_eq!(ev_threshold(20, 80.0), 2);
        assert_eq!(ev_threshold(20, -80.0), 18);
        assert_eq!(ev_threshold(2, 99.0), 0);
        assert_eq!(ev_threshold(2, -99.0), 2);
    }

    #[test]
    fn rule_names_round_trip() {
        for rule in [WinningRule::ZeroOne, WinningRule::PopularVote, WinningRule::ElectoralVote] {
            assert_eq!(rule.to_string().parse::<WinningRule>().unwrap(), rule);
        }
        assert!("majority".parse::<WinningRule>().is_err());
    }
}
