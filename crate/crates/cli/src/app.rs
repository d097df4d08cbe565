use std::path::Path;
use std::time::Instant;

use blotto::data::{self, BattleFile, ElectionDataset};
use blotto::{Allocation, BlottoError, EngineConfig, GameSpec, Player, Result, RunRecord};
use clap::Parser;

use crate::args::{Cli, Command, EngineArgs, FixedFrom, OracleArgs, Source, SweepArgs, VsFixedArgs};
use crate::check::{oracle_check, random_cumulative_loss};
use crate::output::{emit_results, write_atomic, Summary};
use crate::sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

enum Loaded {
    Battles(BattleFile),
    Election(ElectionDataset),
}

/// Reads `path`, falling back to the bundled file of the same name.
fn read_source(path: &Path) -> Result<String> {
    match std::fs::read_to_string(path) {
        Ok(text) => Ok(text),
        Err(source) => path
            .file_name()
            .and_then(|n| n.to_str())
            .and_then(data::bundled)
            .map(str::to_owned)
            .ok_or(BlottoError::Io { path: path.to_path_buf(), source }),
    }
}

fn load(source: &Source) -> Result<Loaded> {
    match (&source.battles, &source.election) {
        (Some(p), None) => Ok(Loaded::Battles(data::parse_battles(&read_source(p)?)?)),
        (None, Some(p)) => Ok(Loaded::Election(data::parse_election(&read_source(p)?)?)),
        _ => Err(BlottoError::InvalidConfig("exactly one of --battles or --election is required".into())),
    }
}

fn build_spec(loaded: &Loaded, args: &EngineArgs) -> Result<(GameSpec, Vec<String>)> {
    let (spec, names) = match loaded {
        Loaded::Battles(b) => (b.to_game(args.n1, args.n2, args.rule)?, b.names.clone()),
        Loaded::Election(d) => (d.to_game(args.rule)?, d.names()),
    };
    Ok((spec.with_voter_scale(args.voter_scale)?, names))
}

pub fn engine_config(args: &EngineArgs) -> EngineConfig {
    EngineConfig {
        beta: args.beta,
        max_rounds: args.rounds,
        epsilon: args.epsilon,
        checkpoint_every: args.checkpoint,
        warm_start: args.warm,
        warm_rounds: args.warm_rounds,
        update_rule: args.update,
        seed: args.seed,
        eq_distance: args.eq_distance,
        ..EngineConfig::default()
    }
}

fn fixed_allocation(args: &VsFixedArgs, loaded: &Loaded, spec: &GameSpec) -> Result<Allocation> {
    let player = if args.fixed_player == 1 { Player::One } else { Player::Two };
    let from = args.fixed_from.unwrap_or(match loaded {
        Loaded::Election(_) => FixedFrom::Data,
        Loaded::Battles(_) => FixedFrom::ThreeHalves,
    });
    let alloc = match from {
        FixedFrom::Data => match loaded {
            Loaded::Election(d) => data::visits_to_allocation(d, player),
            Loaded::Battles(_) => {
                return Err(BlottoError::InvalidConfig("--fixed-from data needs --election".into()))
            }
        },
        FixedFrom::Proportional => spec.proportional(player),
        FixedFrom::ThreeHalves => spec.three_halves(player),
        FixedFrom::Uniform => spec.uniform(player),
        FixedFrom::File => {
            let path = args
                .fixed_file
                .as_ref()
                .ok_or_else(|| BlottoError::InvalidConfig("--fixed-from file needs --fixed-file".into()))?;
            Allocation::new(data::load_allocation_csv(path)?, player, spec.k(), spec.capacity(player))?
        }
    };
    spec.validate(&alloc, player)?;
    Ok(alloc)
}

fn finish(record: &RunRecord, names: &[String], args: &EngineArgs, seconds: f64) -> Result<i32> {
    emit_results(record, names, &args.out, !args.no_figures)?;
    println!("{}", Summary::new(record, seconds));
    if args.strict && args.epsilon > 0.0 && !record.converged {
        eprintln!("regret target {} not reached in {} rounds", args.epsilon, record.rounds_played);
        return Ok(EXIT_NOT_CONVERGED);
    }
    Ok(EXIT_OK)
}

fn solve(source: &Source, args: &EngineArgs, fixed: Option<&VsFixedArgs>) -> Result<i32> {
    let loaded = load(source)?;
    let (spec, names) = build_spec(&loaded, args)?;
    let fixed = fixed.map(|f| fixed_allocation(f, &loaded, &spec)).transpose()?;
    let config = engine_config(args);
    let start = Instant::now();
    let record = blotto::engine::run(&spec, &config, fixed)?;
    finish(&record, &names, args, start.elapsed().as_secs_f64())
}

fn oracle(args: &OracleArgs) -> Result<i32> {
    let loss = random_cumulative_loss(args.k, args.n, args.history, args.seed)?;
    let start = Instant::now();
    let report = oracle_check(&loss, args.beta, args.samples, args.seed.wrapping_add(1))?;
    let pass = report.tv_distance < args.tv_tolerance && report.max_weight_error < 1e-9;
    println!(
        "compositions={} samples={} tv_distance={:.6} max_weight_error={:.3e} wall={:.3}s {}",
        report.compositions,
        report.samples,
        report.tv_distance,
        report.max_weight_error,
        start.elapsed().as_secs_f64(),
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(if pass { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn timing(args: &SweepArgs) -> Result<i32> {
    let pairs = args
        .pairs
        .iter()
        .map(|s| sweep::parse_pair(s).ok_or_else(|| BlottoError::InvalidConfig(format!("bad pair {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let cells = sweep::grid(&args.ks, &pairs, args.seed);
    let base = EngineConfig {
        beta: args.beta,
        epsilon: args.epsilon,
        max_rounds: args.rounds,
        checkpoint_every: args.checkpoint,
        ..EngineConfig::default()
    };
    let results = sweep::run_grid(&cells, args.rule, &base, sweep::thread_limit())?;
    println!("{:>3} {:>4} {:>4} {:>9} {:>8} {:>10}", "k", "n1", "n2", "seconds", "rounds", "regret");
    for r in &results {
        println!(
            "{:>3} {:>4} {:>4} {:>9.3} {:>8} {:>10.5}{}",
            r.cell.k,
            r.cell.n1,
            r.cell.n2,
            r.seconds,
            r.rounds,
            r.total_regret,
            if r.converged { "" } else { " (not reached)" }
        );
    }
    std::fs::create_dir_all(&args.out).map_err(|source| BlottoError::Io { path: args.out.clone(), source })?;
    write_atomic(&args.out.join("timing.csv"), sweep::timing_csv(&results).as_bytes())?;
    Ok(EXIT_OK)
}

/// Parses `argv` (including the program name), runs it, and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let outcome = match &cli.command {
        Command::Solve(a) => solve(&a.source, &a.engine, None),
        Command::VsFixed(a) => solve(&a.source, &a.engine, Some(a)),
        Command::OracleCheck(a) => oracle(a),
        Command::TimingSweep(a) => timing(a),
    };
    outcome.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        EXIT_ERROR
    })
}
