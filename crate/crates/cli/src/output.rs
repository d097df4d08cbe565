use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use blotto::game::{three_halves_weights, weighted_targets};
use blotto::metrics::{average_allocation, euclidean_distance};
use blotto::{BlottoError, Checkpoint, Player, Result, RunRecord};

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let io_err = |source| BlottoError::Io { path: path.to_path_buf(), source };
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(contents).map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn regret_csv(checkpoints: &[Checkpoint]) -> String {
    let with_distance = checkpoints.iter().any(|c| c.eq_distance.is_some());
    let mut out = String::from("round,regret_p1,regret_p2,total_regret");
    if with_distance {
        out.push_str(",eq_distance");
    }
    out.push('\n');
    for c in checkpoints {
        let _ = write!(out, "{},{},{},{}", c.round, c.regret[0], c.regret[1], c.total_regret);
        if with_distance {
            match c.eq_distance {
                Some(d) => {
                    let _ = write!(out, ",{d}");
                }
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_regret_csv(text: &str) -> Result<Vec<Checkpoint>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let parse_err = |line: u64, msg: String| BlottoError::Parse { line, msg };
    let headers = reader.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    let base = ["round", "regret_p1", "regret_p2", "total_regret"];
    let with_distance = match headers.len() {
        4 => false,
        5 if &headers[4] == "eq_distance" => true,
        _ => return Err(parse_err(1, format!("unexpected header {headers:?}"))),
    };
    if base.iter().zip(headers.iter()).any(|(a, b)| *a != b) {
        return Err(parse_err(1, format!("unexpected header {headers:?}")));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            parse_err(e.position().map_or(0, |p| p.line()), e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let float = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|e| parse_err(line, format!("{}: {e}", &headers[i])))
        };
        let round = record[0]
            .parse::<u64>()
            .map_err(|e| parse_err(line, format!("round: {e}")))?;
        let eq_distance = match with_distance {
            true if !record[4].is_empty() => Some(float(4)?),
            _ => None,
        };
        out.push(Checkpoint {
            round,
            regret: [float(1)?, float(2)?],
            total_regret: float(3)?,
            eq_distance,
        });
    }
    Ok(out)
}

/// Real-valued reference allocations for `player`.
pub fn reference_targets(record: &RunRecord, player: Player) -> [Vec<f64>; 2] {
    let values = record.spec.values();
    let n = record.spec.capacity(player);
    [weighted_targets(values, n), weighted_targets(&three_halves_weights(values), n)]
}

pub fn allocation_csv(record: &RunRecord, names: &[String]) -> String {
    let avg = Player::BOTH.map(|p| average_allocation(record, p));
    let [prop, three] = reference_targets(record, Player::One);
    let mut wtr = csv::Writer::from_writer(Vec::new());
    let row = |w: &mut csv::Writer<Vec<u8>>, fields: &[String]| w.write_record(fields).expect("in-memory write");
    row(
        &mut wtr,
        &["battle", "value", "avg_p1", "avg_p2", "proportional", "three_halves"].map(String::from),
    );
    for (j, v) in record.spec.values().iter().enumerate() {
        let name = names.get(j).cloned().unwrap_or_else(|| (j + 1).to_string());
        row(
            &mut wtr,
            &[
                name,
                v.to_string(),
                avg[0][j].to_string(),
                avg[1][j].to_string(),
                prop[j].to_string(),
                three[j].to_string(),
            ],
        );
    }
    String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub total_regret: f64,
    pub rounds: u64,
    pub seconds: f64,
    pub player: Player,
    pub distance_proportional: f64,
    pub distance_three_halves: f64,
    pub converged: bool,
}

impl Summary {
    pub fn new(record: &RunRecord, seconds: f64) -> Self {
        let player = record.learner().unwrap_or(Player::One);
        let avg = average_allocation(record, player);
        let [prop, three] = reference_targets(record, player);
        Summary {
            total_regret: record.final_checkpoint().map_or(0.0, |c| c.total_regret),
            rounds: record.rounds_played,
            seconds,
            player,
            distance_proportional: euclidean_distance(&avg, &prop),
            distance_three_halves: euclidean_distance(&avg, &three),
            converged: record.converged,
        }
    }
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "total_regret={} rounds={} wall={:.3}s dist_proportional_p{}={:.4} dist_three_halves_p{}={:.4}",
            self.total_regret,
            self.rounds,
            self.seconds,
            self.player.index() + 1,
            self.distance_proportional,
            self.player.index() + 1,
            self.distance_three_halves,
        )
    }
}

/// Writes the CSV tables and, unless disabled, the SVG figures into `dir`.
pub fn emit_results(record: &RunRecord, names: &[String], dir: &Path, figures: bool) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| BlottoError::Io { path: dir.to_path_buf(), source })?;
    write_atomic(&dir.join("regret.csv"), regret_csv(&record.checkpoints).as_bytes())?;
    write_atomic(&dir.join("allocation.csv"), allocation_csv(record, names).as_bytes())?;
    if figures {
        write_atomic(&dir.join("regret.svg"), crate::svg::regret_svg(&record.checkpoints).as_bytes())?;
        write_atomic(&dir.join("allocation.svg"), crate::svg::allocation_svg(record, names).as_bytes())?;
    }
    Ok(())
}
