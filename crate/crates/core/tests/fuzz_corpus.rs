//! Replays the checked-in fuzz corpus through the parsers.

use std::path::PathBuf;

use blotto::data::{parse_allocation, parse_battles, parse_election, visits_to_allocation};
use blotto::Player;

fn corpus(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .map(|p| {
            let text = String::from_utf8_lossy(&std::fs::read(&p).unwrap()).into_owned();
            (p, text)
        })
        .collect();
    files.sort();
    assert!(!files.is_empty(), "empty corpus {}", dir.display());
    files
}

#[test]
fn battles_corpus() {
    let mut parsed = 0;
    for (path, text) in corpus("battles_csv") {
        if let Ok(file) = parse_battles(&text) {
            assert_eq!(file.values.len(), file.advantages.len(), "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn election_corpus() {
    let mut parsed = 0;
    for (path, text) in corpus("election_csv") {
        if let Ok(dataset) = parse_election(&text) {
            assert_eq!(parse_election(&dataset.to_csv()).unwrap(), dataset, "{}", path.display());
            for party in Player::BOTH {
                assert_eq!(visits_to_allocation(&dataset, party).total(), dataset.total(party));
            }
            parsed += 1;
        }
    }
    assert!(parsed > 0);
}

#[test]
fn allocation_corpus() {
    let results: Vec<bool> = corpus("allocation_csv").iter().map(|(_, t)| parse_allocation(t).is_ok()).collect();
    assert!(results.contains(&true) && results.contains(&false));
}
