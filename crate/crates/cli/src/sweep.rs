use std::time::Instant;

use blotto::{run_self_play, EngineConfig, GameSpec, Result, WinningRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub k: usize,
    pub n1: u32,
    pub n2: u32,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub cell: Cell,
    pub seconds: f64,
    pub rounds: u64,
    pub total_regret: f64,
    pub converged: bool,
}

/// Integer battle values drawn uniformly from 1..=100.
pub fn random_values(k: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| rng.random_range(1..=100) as f64).collect()
}

pub fn parse_pair(s: &str) -> Option<(u32, u32)> {
    let (a, b) = s.split_once(':')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

pub fn grid(ks: &[usize], pairs: &[(u32, u32)], seed: u64) -> Vec<Cell> {
    let mut cells = Vec::new();
    for &k in ks {
        for &(n1, n2) in pairs {
            let cell_seed = seed ^ ((k as u64) << 32 | (n1 as u64) << 16 | n2 as u64);
            cells.push(Cell { k, n1, n2, seed: cell_seed });
        }
    }
    cells
}

pub fn run_cell(cell: &Cell, rule: WinningRule, base: &EngineConfig) -> Result<CellResult> {
    let spec = GameSpec::new(random_values(cell.k, cell.seed), cell.n1, cell.n2, rule)?;
    let config = EngineConfig { seed: cell.seed, ..base.clone() };
    let start = Instant::now();
    let record = run_self_play(&spec, &config)?;
    Ok(CellResult {
        cell: cell.clone(),
        seconds: start.elapsed().as_secs_f64(),
        rounds: record.rounds_played,
        total_regret: record.final_checkpoint().map_or(0.0, |c| c.total_regret),
        converged: record.converged,
    })
}

/// Runs every cell, in parallel when `threads` allows it.
pub fn run_grid(cells: &[Cell], rule: WinningRule, base: &EngineConfig, threads: usize) -> Result<Vec<CellResult>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| cells.par_iter().map(|c| run_cell(c, rule, base)).collect())
}

/// Worker count from `BLOTTO_THREADS`, else the available parallelism.
pub fn thread_limit() -> usize {
    std::env::var("BLOTTO_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn timing_csv(results: &[CellResult]) -> String {
    let mut out = String::from("k,n1,n2,seed,seconds,rounds,total_regret,converged\n");
    for r in results {
        out.push_str(&format!(
            "{},{},{},{},{:.3},{},{},{}\n",
            r.cell.k, r.cell.n1, r.cell.n2, r.cell.seed, r.seconds, r.rounds, r.total_regret, r.converged
        ));
    }
    out
}
