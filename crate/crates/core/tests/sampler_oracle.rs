//! The partition DP and sampler against brute-force enumeration.

use blotto::engine::{compute_partition, sample_allocation, step_weights, LossMatrix};
use blotto::logspace::binomial;
use blotto::metrics::best_response_value;
use blotto::oracle::{
    empirical_distribution, enumerate_compositions, exhaustive_best_response, explicit_distribution,
    explicit_step_weights, tv_distance,
};
use blotto::Player;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, k: usize, n: u32, scale: f64) -> LossMatrix {
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..=n).map(|_| rng.random::<f64>() * scale).collect())
        .collect();
    LossMatrix::from_rows(Player::One, &rows).unwrap()
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn step_weights_match_enumerated_marginals() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for k in 2..=4 {
        for n in 0..=6 {
            for _ in 0..5 {
                let beta = 0.5 + 0.49 * rng.random::<f64>();
                let loss = random_matrix(&mut rng, k, n, 20.0);
                let table = compute_partition(&loss, beta);
                for battle in 1..k {
                    for residual in 0..=n {
                        let engine = step_weights(&loss, beta, &table, battle, residual as usize);
                        let oracle = explicit_step_weights(&loss, beta, battle, residual).unwrap();
                        for (e, o) in engine.iter().zip(&oracle) {
                            if *o > 1e-300 {
                                assert!(rel_err(*e, *o) < 1e-9, "k={k} n={n} {e} vs {o}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn zero_losses_count_compositions() {
    for k in 1..=10usize {
        for n in 0..=(20 - k as u32) {
            let t = compute_partition(&LossMatrix::zeros(Player::One, k, n), 0.9);
            let count = binomial(n as u64 + k as u64 - 1, k as u64 - 1).unwrap() as f64;
            assert!(rel_err(t.log_total().exp(), count) < 1e-12, "k={k} n={n}");
        }
    }
}

#[test]
fn row_shifts_leave_step_weights_unchanged() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let k = rng.random_range(2..6);
        let n = rng.random_range(1..12);
        let beta = 0.9;
        let loss = random_matrix(&mut rng, k, n, 50.0);
        let mut shifted = loss.clone();
        for j in 0..k {
            shifted.shift_row(j, rng.random_range(-40.0..400.0));
        }
        let t0 = compute_partition(&loss, beta);
        let t1 = compute_partition(&shifted, beta);
        for battle in 1..k {
            for r in 0..=n as usize {
                let a = step_weights(&loss, beta, &t0, battle, r);
                let b = step_weights(&shifted, beta, &t1, battle, r);
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-9);
                }
            }
        }
    }
}

#[test]
fn sampler_matches_explicit_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let loss = random_matrix(&mut rng, 3, 5, 10.0);
    let beta = 0.9;
    let (set, explicit) = explicit_distribution(&loss, beta).unwrap();
    assert_eq!(set.len(), 21);
    let table = compute_partition(&loss, beta);
    let mut draws = ChaCha8Rng::seed_from_u64(99);
    let samples: Vec<Vec<u32>> = (0..100_000)
        .map(|_| sample_allocation(&loss, beta, &table, &mut draws).amounts().to_vec())
        .collect();
    let empirical = empirical_distribution(&set, samples.iter().map(Vec::as_slice));
    let tv = tv_distance(&empirical, &explicit).unwrap();
    assert!(tv < 0.02, "tv = {tv}");
}

#[test]
fn best_response_dp_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..100 {
        let k = rng.random_range(1..=4);
        let n = rng.random_range(0..=6);
        // integer losses force plenty of exact ties
        let rows: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..=n).map(|_| rng.random_range(0..4) as f64).collect())
            .collect();
        let loss = LossMatrix::from_rows(Player::Two, &rows).unwrap();
        let (dp_value, dp_alloc) = best_response_value(&loss);
        let (ex_value, ex_alloc) = exhaustive_best_response(&loss).unwrap();
        assert_eq!(dp_value, ex_value);
        assert_eq!(dp_alloc, ex_alloc);
    }
    for _ in 0..100 {
        let k = rng.random_range(1..=4);
        let n = rng.random_range(0..=6);
        let loss = random_matrix(&mut rng, k, n, 3.0);
        let (dp_value, dp_alloc) = best_response_value(&loss);
        let (ex_value, ex_alloc) = exhaustive_best_response(&loss).unwrap();
        assert_eq!(dp_value, ex_value);
        assert_eq!(dp_alloc, ex_alloc);
    }
}

#[test]
fn best_response_on_larger_games() {
    // every game with at most 10^4 compositions
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for (k, n) in [(3, 12), (4, 20), (5, 14), (6, 10), (2, 50)] {
        assert!(enumerate_compositions(n, k).unwrap().len() <= 10_000);
        let loss = random_matrix(&mut rng, k, n, 7.0);
        assert_eq!(best_response_value(&loss), exhaustive_best_response(&loss).unwrap());
    }
}
