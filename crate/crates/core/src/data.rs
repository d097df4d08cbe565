//! Battle-value files, historical election datasets and fixed-allocation files.
//!
//! All formats are UTF-8 CSV with an exact header row. Lines starting with
//! `#` are comments. Parsing is strict: a malformed row is an error carrying
//! its line number.

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::error::{BlottoError, Result};
use crate::game::{Allocation, GameSpec, Player, WinningRule};

/// Bundled 2008 battleground dataset (party 1 Democratic, party 2 Republican).
pub const ELECTION_2008: &str = include_str!("../data/election_2008.csv");
/// Bundled 2020 dataset, states visited at least twice by each ticket.
pub const ELECTION_2020: &str = include_str!("../data/election_2020.csv");
/// Battle values `[1, 2, 3, 5, 9]`.
pub const FIXED5: &str = include_str!("../data/fixed5.csv");
/// Battle values `j²` for `j = 1..=5`.
pub const QUADRATIC5: &str = include_str!("../data/quadratic5.csv");
/// Six battles of value 10 with advantages `[80, 80, 0, 0, -80, -80]`.
pub const ADVANTAGE6: &str = include_str!("../data/advantage6.csv");

/// Bundled file contents by file name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "election_2008.csv" => Some(ELECTION_2008),
        "election_2020.csv" => Some(ELECTION_2020),
        "fixed5.csv" => Some(FIXED5),
        "quadratic5.csv" => Some(QUADRATIC5),
        "advantage6.csv" => Some(ADVANTAGE6),
        _ => None,
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| BlottoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(line: u64, msg: impl Into<String>) -> BlottoError {
    BlottoError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads `text` as CSV and checks the header against `required` columns
/// optionally followed by `optional`. Returns the rows with their line
/// numbers and whether the optional column is present.
fn read_table(
    text: &str,
    required: &[&str],
    optional: Option<&str>,
) -> Result<(Vec<(u64, StringRecord)>, bool)> {
    let mut reader = ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(Trim::All)
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(parse_err(1, "file is empty")),
        Some(r) => r.map_err(|e| csv_err(&e))?,
    };
    let header_line = header.position().map_or(1, |p| p.line());
    let fields: Vec<&str> = header.iter().collect();
    let with_optional = match optional {
        Some(opt) if fields.len() == required.len() + 1 && fields.last() == Some(&opt) => true,
        _ if fields == required => false,
        _ => {
            let expected = match optional {
                Some(opt) => format!("{}[,{opt}]", required.join(",")),
                None => required.join(","),
            };
            return Err(parse_err(
                header_line,
                format!("expected header `{expected}`, found `{}`", fields.join(",")),
            ));
        }
    };
    if fields[..required.len()] != *required {
        return Err(parse_err(header_line, format!("bad header `{}`", fields.join(","))));
    }
    let width = required.len() + usize::from(with_optional);
    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_err(&e))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != width {
            return Err(parse_err(
                line,
                format!("expected {width} fields, found {}", record.len()),
            ));
        }
        rows.push((line, record));
    }
    if rows.is_empty() {
        return Err(parse_err(header_line, "no data rows"));
    }
    Ok((rows, with_optional))
}

fn csv_err(e: &csv::Error) -> BlottoError {
    let line = e.position().map_or(0, |p| p.line());
    parse_err(line, e.to_string())
}

fn field<T: std::str::FromStr>(line: u64, raw: &str, what: &str) -> Result<T> {
    raw.parse()
        .map_err(|_| parse_err(line, format!("{what} `{raw}` is not a valid number")))
}

fn parse_advantage(line: u64, raw: &str) -> Result<f64> {
    let d: f64 = field(line, raw, "advantage")?;
    if !(d.is_finite() && d.abs() < 100.0) {
        return Err(parse_err(line, format!("advantage {d} outside (-100, 100)")));
    }
    Ok(d)
}

fn check_name(line: u64, name: &str, seen: &mut HashSet<String>, what: &str) -> Result<()> {
    if name.is_empty() {
        return Err(parse_err(line, format!("empty {what} name")));
    }
    if !seen.insert(name.to_string()) {
        return Err(parse_err(line, format!("duplicate {what} `{name}`")));
    }
    Ok(())
}

/// Battles read from a `battle,value[,advantage]` file.
#[derive(Debug, Clone, PartialEq)]
pub struct BattleFile {
    pub names: Vec<String>,
    pub values: Vec<f64>,
    pub advantages: Vec<f64>,
}

impl BattleFile {
    pub fn to_game(&self, n1: u32, n2: u32, rule: WinningRule) -> Result<GameSpec> {
        GameSpec::new(self.values.clone(), n1, n2, rule)?.with_advantages(self.advantages.clone())
    }
}

pub fn parse_battles(text: &str) -> Result<BattleFile> {
    let (rows, _) = read_table(text, &["battle", "value"], Some("advantage"))?;
    let mut seen = HashSet::new();
    let mut out = BattleFile {
        names: Vec::new(),
        values: Vec::new(),
        advantages: Vec::new(),
    };
    for (line, rec) in rows {
        check_name(line, &rec[0], &mut seen, "battle")?;
        let value: f64 = field(line, &rec[1], "value")?;
        if !(value.is_finite() && value > 0.0) {
            return Err(parse_err(line, format!("value {value} is not positive")));
        }
        let advantage = match rec.get(2) {
            Some(raw) => parse_advantage(line, raw)?,
            None => 0.0,
        };
        out.names.push(rec[0].to_string());
        out.values.push(value);
        out.advantages.push(advantage);
    }
    Ok(out)
}

pub fn load_battles_csv(path: impl AsRef<Path>) -> Result<BattleFile> {
    parse_battles(&read_file(path.as_ref())?)
}

/// One state of an election dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct StateRow {
    pub state: String,
    pub electoral_votes: u32,
    /// Visits by party 1 and party 2.
    pub visits: [u32; 2],
    /// Advantage of party 1, in percent.
    pub advantage: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElectionDataset {
    rows: Vec<StateRow>,
}

impl ElectionDataset {
    pub fn new(rows: Vec<StateRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(BlottoError::InvalidGame("dataset has no states".into()));
        }
        let mut seen = HashSet::new();
        for (i, row) in rows.iter().enumerate() {
            let line = i as u64 + 2;
            let name = row.state.as_str();
            if name.trim() != name || name.starts_with('#') {
                return Err(parse_err(line, format!("unusable state name `{name}`")));
            }
            check_name(line, name, &mut seen, "state")?;
            if row.electoral_votes == 0 {
                return Err(parse_err(line, "electoral votes must be positive"));
            }
            if !(row.advantage.is_finite() && row.advantage.abs() < 100.0) {
                return Err(parse_err(line, format!("advantage {} outside (-100, 100)", row.advantage)));
            }
        }
        Ok(ElectionDataset { rows })
    }

    pub fn rows(&self) -> &[StateRow] {
        &self.rows
    }

    pub fn totals(&self) -> (u32, u32) {
        (self.total(Player::One), self.total(Player::Two))
    }

    pub fn total(&self, party: Player) -> u32 {
        self.rows.iter().map(|r| r.visits[party.index()]).sum()
    }

    pub fn names(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.state.clone()).collect()
    }

    /// Electoral votes as values, visit totals as capacities.
    pub fn to_game(&self, rule: WinningRule) -> Result<GameSpec> {
        let (n1, n2) = self.totals();
        let values = self.rows.iter().map(|r| r.electoral_votes as f64).collect();
        let advantages = self.rows.iter().map(|r| r.advantage).collect();
        GameSpec::new(values, n1, n2, rule)?.with_advantages(advantages)
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["state", "electoral_votes", "visits_p1", "visits_p2", "advantage"])
            .expect("in-memory write");
        for r in &self.rows {
            writer
                .write_record([
                    r.state.clone(),
                    r.electoral_votes.to_string(),
                    r.visits[0].to_string(),
                    r.visits[1].to_string(),
                    r.advantage.to_string(),
                ])
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8 input")
    }
}

pub fn parse_election(text: &str) -> Result<ElectionDataset> {
    let (rows, _) = read_table(
        text,
        &["state", "electoral_votes", "visits_p1", "visits_p2"],
        Some("advantage"),
    )?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(rows.len());
    for (line, rec) in rows {
        check_name(line, &rec[0], &mut seen, "state")?;
        let electoral_votes: u32 = field(line, &rec[1], "electoral_votes")?;
        if electoral_votes == 0 {
            return Err(parse_err(line, "electoral votes must be positive"));
        }
        let v1: u32 = field(line, &rec[2], "visits_p1")?;
        let v2: u32 = field(line, &rec[3], "visits_p2")?;
        let advantage = match rec.get(4) {
            Some(raw) => parse_advantage(line, raw)?,
            None => 0.0,
        };
        out.push(StateRow {
            state: rec[0].to_string(),
            electoral_votes,
            visits: [v1, v2],
            advantage,
        });
    }
    ElectionDataset::new(out)
}

pub fn load_election_csv(path: impl AsRef<Path>) -> Result<ElectionDataset> {
    parse_election(&read_file(path.as_ref())?)
}

/// The historical visit counts of `party` as a fixed allocation.
pub fn visits_to_allocation(dataset: &ElectionDataset, party: Player) -> Allocation {
    let amounts = dataset.rows.iter().map(|r| r.visits[party.index()]).collect();
    Allocation::from_amounts(amounts, party)
}

/// Parses a `battle,amount` file into raw per-battle amounts.
pub fn parse_allocation(text: &str) -> Result<Vec<u32>> {
    let (rows, _) = read_table(text, &["battle", "amount"], None)?;
    let mut seen = HashSet::new();
    rows.into_iter()
        .map(|(line, rec)| {
            check_name(line, &rec[0], &mut seen, "battle")?;
            field(line, &rec[1], "amount")
        })
        .collect()
}

pub fn load_allocation_csv(path: impl AsRef<Path>) -> Result<Vec<u32>> {
    parse_allocation(&read_file(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battle_file_examples() {
        let b = parse_battles(FIXED5).unwrap();
        assert_eq!(b.values, vec![1.0, 2.0, 3.0, 5.0, 9.0]);
        assert_eq!(b.advantages, vec![0.0; 5]);

        let b = parse_battles("battle,value\nb1,1\n").unwrap();
        assert_eq!((b.values, b.advantages), (vec![1.0], vec![0.0]));

        let err = parse_battles("battle,value\nb1,-2\n").unwrap_err();
        assert!(matches!(err, BlottoError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn battle_file_errors() {
        assert!(parse_battles("").is_err());
        assert!(parse_battles("battle,value\n").is_err());
        assert!(parse_battles("battles,value\nb1,1\n").is_err());
        assert!(parse_battles("battle,value\nb1,x\n").is_err());
        assert!(parse_battles("battle,value\nb1,1,3\n").is_err());
        assert!(parse_battles("battle,value,advantage\nb1,1,100\n").is_err());
        assert!(parse_battles("battle,value\nb1,1\nb1,2\n").is_err());
        let err = parse_battles("# values\nbattle,value\nb1,1\nb2,0\n").unwrap_err();
        assert!(matches!(err, BlottoError::Parse { line: 4, .. }), "{err}");
    }

    #[test]
    fn advantages_and_comments() {
        let b = parse_battles("# six battles\nbattle,value,advantage\na,1,80\n# mid\nb, 2 ,-80\n")
            .unwrap();
        assert_eq!(b.values, vec![1.0, 2.0]);
        assert_eq!(b.advantages, vec![80.0, -80.0]);
    }

    #[test]
    fn quadratic_values() {
        let b = parse_battles(QUADRATIC5).unwrap();
        assert_eq!(b.values, vec![1.0, 4.0, 9.0, 16.0, 25.0]);
    }

    #[test]
    fn bundled_election_totals() {
        let d = parse_election(ELECTION_2008).unwrap();
        assert_eq!(d.totals(), (98, 114));
        assert_eq!(d.rows().len(), 9);
        assert_eq!(visits_to_allocation(&d, Player::Two).total(), 114);

        let d = parse_election(ELECTION_2020).unwrap();
        assert_eq!(d.totals(), (45, 61));
        assert_eq!(d.rows().len(), 8);
        assert_eq!(visits_to_allocation(&d, Player::One).total(), 45);
    }

    #[test]
    fn single_state_dataset() {
        let d = parse_election("state,electoral_votes,visits_p1,visits_p2\nOhio,20,7,3\n").unwrap();
        assert_eq!(visits_to_allocation(&d, Player::One).amounts(), &[7]);
        let g = d.to_game(WinningRule::ElectoralVote).unwrap();
        assert_eq!(g.capacities(), [7, 3]);
        assert_eq!(g.normalized_values(), &[1.0]);
    }

    #[test]
    fn election_errors() {
        assert!(parse_election("").is_err());
        assert!(parse_election("state,electoral_votes,visits_p1,visits_p2\n").is_err());
        assert!(parse_election("state,electoral_votes,visits_p1,visits_p2\nOhio,0,1,1\n").is_err());
        assert!(parse_election("state,electoral_votes,visits_p1,visits_p2\nOhio,20,-1,1\n").is_err());
    }

    #[test]
    fn election_round_trip() {
        let d = parse_election(ELECTION_2008).unwrap();
        assert_eq!(parse_election(&d.to_csv()).unwrap(), d);
        let g = d.to_game(WinningRule::ElectoralVote).unwrap();
        assert!((g.normalized_values().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn allocation_files() {
        assert_eq!(parse_allocation("battle,amount\na,3\nb,0\n").unwrap(), vec![3, 0]);
        assert!(parse_allocation("battle,amount\na,-3\n").is_err());
        assert!(parse_allocation("battle,value\na,3\n").is_err());
    }

    #[test]
    fn missing_file_is_an_io_error() {
        assert!(matches!(
            load_battles_csv("/nonexistent/battles.csv"),
            Err(BlottoError::Io { .. })
        ));
    }
}
