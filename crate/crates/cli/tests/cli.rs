use std::path::Path;
use std::process::{Command, Output};

use blotto_cli::output::parse_regret_csv;

fn blotto(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blotto"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}

const SOLVE: &[&str] = &["solve", "--battles", "fixed5.csv", "--rule", "pv", "--rounds", "2500", "--seed", "3"];

#[test]
fn solve_writes_tables_and_figures() {
    let tmp = tempfile::tempdir().unwrap();
    let out = blotto(tmp.path(), &[SOLVE, &["--checkpoint", "1000", "--out", "run"]].concat());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = tmp.path().join("run");

    let regret = String::from_utf8(read(&run, "regret.csv")).unwrap();
    let log = parse_regret_csv(&regret).unwrap();
    assert_eq!(log.iter().map(|c| c.round).collect::<Vec<_>>(), vec![1000, 2000, 2500]);
    assert_eq!(regret.lines().count(), 4);

    let allocation = String::from_utf8(read(&run, "allocation.csv")).unwrap();
    let mut lines = allocation.lines();
    assert_eq!(lines.next(), Some("battle,value,avg_p1,avg_p2,proportional,three_halves"));
    assert_eq!(lines.count(), 5);

    let summary = String::from_utf8(out.stdout).unwrap();
    let total = summary
        .split_whitespace()
        .find_map(|f| f.strip_prefix("total_regret="))
        .unwrap();
    assert_eq!(total.parse::<f64>().unwrap(), log.last().unwrap().total_regret);
    assert!(summary.contains("rounds=2500"));

    for svg in ["regret.svg", "allocation.svg"] {
        let text = String::from_utf8(read(&run, svg)).unwrap();
        assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    }
}

#[test]
fn identical_plans_give_identical_files() {
    let tmp = tempfile::tempdir().unwrap();
    for dir in ["a", "b"] {
        let args = [SOLVE, &["--eq-distance", "--update", "optimistic", "--out", dir]].concat();
        assert!(blotto(tmp.path(), &args).status.success());
    }
    for name in ["regret.csv", "allocation.csv", "regret.svg", "allocation.svg"] {
        assert_eq!(read(&tmp.path().join("a"), name), read(&tmp.path().join("b"), name), "{name}");
    }
    let header = String::from_utf8(read(&tmp.path().join("a"), "regret.csv")).unwrap();
    assert!(header.starts_with("round,regret_p1,regret_p2,total_regret,eq_distance\n"));
}

#[test]
fn vs_fixed_accepts_each_source() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("fixed.csv"), "battle,amount\nb1,4\nb2,4\nb3,4\nb4,4\nb5,4\n").unwrap();
    for from in ["proportional", "three-halves", "uniform", "file"] {
        let out = blotto(
            tmp.path(),
            &["vs-fixed", "--battles", "fixed5.csv", "--rounds", "300", "--fixed-player", "1", "--fixed-from", from,
              "--fixed-file", "fixed.csv", "--out", from, "--no-figures"],
        );
        assert!(out.status.success(), "{from}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!tmp.path().join(from).join("regret.svg").exists());
    }
    let out = blotto(tmp.path(), &["vs-fixed", "--election", "election_2020.csv", "--rule", "ev", "--rounds", "200"]);
    assert!(out.status.success());
    let avg = String::from_utf8(read(tmp.path(), "allocation.csv")).unwrap();
    assert_eq!(avg.lines().count(), 9);
}

#[test]
fn errors_exit_one() {
    let tmp = tempfile::tempdir().unwrap();
    std::fs::write(tmp.path().join("bad.csv"), "battle,value\nb1,-2\n").unwrap();
    for args in [
        &["solve", "--battles", "missing.csv"][..],
        &["solve", "--battles", "bad.csv"],
        &["solve"],
        &["solve", "--battles", "fixed5.csv", "--election", "election_2008.csv"],
        &["solve", "--battles", "fixed5.csv", "--rule", "plurality"],
        &["solve", "--battles", "fixed5.csv", "--beta", "1.5"],
        &["vs-fixed", "--battles", "fixed5.csv", "--fixed-from", "data"],
        &["vs-fixed", "--battles", "fixed5.csv", "--fixed-from", "file"],
        &["vs-fixed", "--battles", "fixed5.csv", "--fixed-player", "3"],
        &["frobnicate"],
    ] {
        let out = blotto(tmp.path(), args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn strict_reports_missed_target() {
    let tmp = tempfile::tempdir().unwrap();
    let base = ["solve", "--battles", "fixed5.csv", "--rounds", "200", "--no-figures"];
    let missed = blotto(tmp.path(), &[&base[..], &["--epsilon", "1e-9", "--strict"]].concat());
    assert_eq!(missed.status.code(), Some(2));
    let lenient = blotto(tmp.path(), &[&base[..], &["--epsilon", "1e-9"]].concat());
    assert_eq!(lenient.status.code(), Some(0));
    let reached = blotto(tmp.path(), &[&base[..], &["--epsilon", "10", "--strict"]].concat());
    assert_eq!(reached.status.code(), Some(0));
}

#[test]
fn oracle_check_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = blotto(tmp.path(), &["oracle-check", "--k", "3", "--n", "5", "--beta", "0.9", "--samples", "100000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("PASS"));
}

#[test]
fn timing_sweep_writes_table() {
    let tmp = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_blotto"))
        .current_dir(tmp.path())
        .env("BLOTTO_THREADS", "2")
        .args(["timing-sweep", "--ks", "3,4", "--pairs", "5:5,5:6", "--epsilon", "0.2", "--rounds", "5000"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let table = String::from_utf8(read(tmp.path(), "timing.csv")).unwrap();
    assert_eq!(table.lines().count(), 5);
    assert!(table.starts_with("k,n1,n2,seed,seconds,rounds,total_regret,converged\n"));
}

#[test]
fn regret_corpus_round_trips() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/regret_csv");
    for entry in std::fs::read_dir(dir).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let log = parse_regret_csv(&text).unwrap();
        assert_eq!(parse_regret_csv(&blotto_cli::output::regret_csv(&log)).unwrap(), log);
    }
}
