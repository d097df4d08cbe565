use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{EngineConfig, LogPartitionTable, LossMatrix, UpdateRule, WarmStart};
use crate::error::{BlottoError, Result};
use crate::game::{Allocation, GameSpec, Player};
use crate::metrics::{exploitability, regret_from, Checkpoint, MarginalProfile, RunRecord};

/// Initial sampling matrix for `player`: `rounds` copies of the loss against
/// the opponent's reference allocation.
pub fn warm_start(spec: &GameSpec, player: Player, warm: WarmStart, rounds: u64) -> LossMatrix {
    let mut m = LossMatrix::zeros(player, spec.k(), spec.capacity(player));
    let opponent = player.opponent();
    let reference = match warm {
        WarmStart::None => return m,
        _ if rounds == 0 => return m,
        WarmStart::Uniform => spec.uniform(opponent),
        WarmStart::Proportional => spec.proportional(opponent),
        WarmStart::ThreeHalves => spec.three_halves(opponent),
    };
    let single = LossMatrix::single_round(spec, player, &reference);
    m.preload(&single, rounds);
    m
}

/// Independent stream per player, keyed by the master seed.
pub fn player_rng(seed: u64, player: Player) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(player.index() as u64 + 1);
    rng
}

/// Both players learn by sampled MWU until total regret drops to `epsilon`
/// or `max_rounds` is reached. An `epsilon` of zero always runs to `max_rounds`.
pub fn run_self_play(spec: &GameSpec, config: &EngineConfig) -> Result<RunRecord> {
    run(spec, config, None)
}

/// The owner of `fixed` plays it every round; the other player learns.
pub fn run_vs_fixed(spec: &GameSpec, config: &EngineConfig, fixed: Allocation) -> Result<RunRecord> {
    run(spec, config, Some(fixed))
}

pub fn run(spec: &GameSpec, config: &EngineConfig, fixed: Option<Allocation>) -> Result<RunRecord> {
    config.validate()?;
    if let Some(f) = &fixed {
        spec.validate(f, f.owner())
            .map_err(|e| BlottoError::InvalidAllocation(format!("fixed strategy: {e}")))?;
    }
    let fixed_player = fixed.as_ref().map(Allocation::owner);
    let k = spec.k();
    let widths = Player::BOTH.map(|p| spec.capacity(p) as usize + 1);

    let mut sampling = Player::BOTH.map(|p| warm_start(spec, p, config.warm_start, config.warm_rounds));
    let mut history = Player::BOTH.map(|p| LossMatrix::zeros(p, k, spec.capacity(p)));
    let mut rngs = Player::BOTH.map(|p| player_rng(config.seed, p));
    let mut tables = sampling.each_ref().map(|m| LogPartitionTable::compute(m, config.beta));
    let mut histograms = widths.map(|w| vec![0u64; k * w]);
    let mut incurred = [0.0f64; 2];
    let mut checkpoints = Vec::new();
    let mut trace = config.keep_trace.then(Vec::new);
    let mut nonfinite = 0u64;
    let mut converged = false;
    let mut rounds_played = 0;

    for t in 1..=config.max_rounds {
        // Both moves come from the state after round t - 1.
        let moves: [Allocation; 2] = Player::BOTH.map(|p| match &fixed {
            Some(f) if f.owner() == p => f.clone(),
            _ => {
                let i = p.index();
                tables[i].fill(&sampling[i], config.beta);
                nonfinite += tables[i].count_nonfinite() as u64;
                crate::engine::sample_allocation(&sampling[i], config.beta, &tables[i], &mut rngs[i])
            }
        });

        for p in Player::BOTH {
            let i = p.index();
            let opp = &moves[p.opponent().index()];
            let current = LossMatrix::single_round(spec, p, opp).entries().to_vec();
            let w = widths[i];
            for (j, &m) in moves[i].amounts().iter().enumerate() {
                incurred[i] += current[j * w + m as usize];
                histograms[i][j * w + m as usize] += 1;
            }
            if fixed_player != Some(p) {
                match config.update_rule {
                    UpdateRule::Standard => sampling[i].absorb_standard(current.clone()),
                    UpdateRule::Optimistic => sampling[i].absorb_optimistic(current.clone()),
                }
            }
            history[i].absorb_standard(current);
        }
        if let Some(tr) = trace.as_mut() {
            tr.push([moves[0].amounts().to_vec(), moves[1].amounts().to_vec()]);
        }
        rounds_played = t;

        if t % config.checkpoint_every == 0 || t == config.max_rounds {
            let regret = [0, 1].map(|i| regret_from(incurred[i], &history[i], t));
            let total_regret = regret[0] + regret[1];
            let eq_distance = config.eq_distance.then(|| {
                let p1 = MarginalProfile::from_histogram(&histograms[0], k, spec.capacity(Player::One));
                let p2 = MarginalProfile::from_histogram(&histograms[1], k, spec.capacity(Player::Two));
                let gaps = exploitability(spec, &p1, &p2).gaps;
                gaps[0].max(gaps[1])
            });
            checkpoints.push(Checkpoint {
                round: t,
                regret,
                total_regret,
                eq_distance,
            });
            let driving = match fixed_player {
                None => total_regret,
                Some(p) => regret[p.opponent().index()],
            };
            if config.epsilon > 0.0 && driving <= config.epsilon {
                converged = true;
                break;
            }
        }
    }

    Ok(RunRecord {
        spec: spec.clone(),
        config: config.clone(),
        fixed,
        histograms,
        incurred,
        history,
        checkpoints,
        rounds_played,
        warm_rounds: config.warm_rounds,
        converged,
        nonfinite_partition_values: nonfinite,
        trace,
    })
}
