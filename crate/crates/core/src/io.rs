//! File formats: CSV co-ranking matrices and the JSON group, game, criteria
//! and rank-distribution files.
//!
//! A matrix file has a header `element,<label_1>,...,<label_n>` followed by
//! one row per element, in header order: the label, then `n` values.
//! Relative paths inside JSON files resolve against the JSON file's
//! directory.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::aggregation::{Criterion, FractionalCriteria};
use crate::error::{Error, Result};
use crate::games::Game;
use crate::prefs::{CoRankingMatrix, ElementSet, IndicatorMatrix, WeightedGroup};
use crate::report::format_sig;
use crate::stochastic::RankDistribution;

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses CSV matrix text; `anti_tol` bounds `|m[i][j] + m[j][i]|`.
pub fn parse_matrix_csv(text: &str, anti_tol: f64) -> Result<CoRankingMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r?,
        None => return Err(parse_error(1, "empty matrix file")),
    };
    let header_line = header.position().map_or(1, |p| p.line());
    if header.get(0) != Some("element") {
        return Err(parse_error(header_line, "header must start with `element`"));
    }
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let elements = ElementSet::new(labels)?;
    let n = elements.len();

    let mut rows = Vec::with_capacity(n);
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != n + 1 {
            return Err(parse_error(
                line,
                format!(
                    "expected a label and {n} values, found {} fields",
                    record.len()
                ),
            ));
        }
        let i = rows.len();
        if i >= n {
            return Err(parse_error(line, format!("more than {n} data rows")));
        }
        if &record[0] != elements.label(i) {
            return Err(parse_error(
                line,
                format!(
                    "row label `{}` does not match header label `{}`",
                    &record[0],
                    elements.label(i)
                ),
            ));
        }
        let values = record
            .iter()
            .skip(1)
            .enumerate()
            .map(|(j, cell)| {
                cell.parse::<f64>().map_err(|_| {
                    parse_error(
                        line,
                        format!("non-numeric value `{cell}` in column {}", j + 2),
                    )
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(values);
    }
    if rows.len() != n {
        return Err(parse_error(
            text.lines().count() as u64,
            format!("expected {n} data rows, found {}", rows.len()),
        ));
    }
    CoRankingMatrix::new(elements, rows, anti_tol)
}

pub fn read_matrix_csv(path: &Path, anti_tol: f64) -> Result<CoRankingMatrix> {
    parse_matrix_csv(&fs::read_to_string(path)?, anti_tol)
}

/// The matrix as an indicator co-ranking if every value is exactly −1, 0
/// or +1.
pub fn exact_indicator(m: &CoRankingMatrix) -> Option<IndicatorMatrix> {
    m.as_slice()
        .iter()
        .all(|&v| v == 0.0 || v.abs() == 1.0)
        .then(|| m.indicator(0.5))
}

/// CSV text with every value written to 12 significant digits.
pub fn matrix_to_csv(m: &CoRankingMatrix) -> String {
    let mut s = String::from("element");
    for label in m.elements().labels() {
        s.push(',');
        s.push_str(label);
    }
    s.push('\n');
    for (i, row) in m.rows().iter().enumerate() {
        s.push_str(m.elements().label(i));
        for v in row {
            let _ = write!(s, ",{}", format_sig(*v));
        }
        s.push('\n');
    }
    s
}

pub fn write_matrix_csv(path: &Path, m: &CoRankingMatrix) -> Result<()> {
    fs::write(path, matrix_to_csv(m))?;
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn resolve(base: &Path, relative: &str) -> PathBuf {
    let p = Path::new(relative);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.parent().unwrap_or(Path::new("")).join(p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub members: Vec<String>,
    /// Unit weights when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl GroupFile {
    pub fn resolve(&self, elements: &ElementSet) -> Result<WeightedGroup> {
        WeightedGroup::from_labels(elements, &self.members, self.weights.clone())
    }
}

pub fn read_group(path: &Path, elements: &ElementSet) -> Result<WeightedGroup> {
    read_json::<GroupFile>(path)?.resolve(elements)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    /// Path of the payoff co-ranking CSV.
    pub payoff: String,
    pub s1: Vec<String>,
    pub s2: Vec<String>,
}

pub fn read_game(path: &Path, anti_tol: f64) -> Result<Game> {
    let file: GameFile = read_json(path)?;
    let m = read_matrix_csv(&resolve(path, &file.payoff), anti_tol)?;
    Game::from_labels(m, &file.s1, &file.s2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriteriaKind {
    Utilities,
    Corankings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriteriaFile {
    #[serde(rename = "K")]
    pub k: usize,
    pub weights: Vec<f64>,
    pub epsilons: Vec<f64>,
    pub kind: CriteriaKind,
    /// Per criterion: `n` utilities, or an `n × n` co-ranking.
    pub data: Vec<serde_json::Value>,
    /// Element labels; `E1..En` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl CriteriaFile {
    pub fn build(&self, anti_tol: f64) -> Result<FractionalCriteria> {
        if self.data.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: self.data.len(),
            });
        }
        let malformed =
            |a: usize| Error::InvalidCriteria(format!("criterion {} has malformed data", a + 1));
        let n = match (&self.labels, self.data.first()) {
            (Some(l), _) => l.len(),
            (None, Some(serde_json::Value::Array(v))) => v.len(),
            _ => return Err(malformed(0)),
        };
        let elements = match &self.labels {
            Some(l) => ElementSet::new(l.clone())?,
            None => ElementSet::indexed(n)?,
        };
        let mut criteria = Vec::with_capacity(self.k);
        for (a, d) in self.data.iter().enumerate() {
            let c = match self.kind {
                CriteriaKind::Utilities => Criterion::Utilities(
                    serde_json::from_value(d.clone()).map_err(|_| malformed(a))?,
                ),
                CriteriaKind::Corankings => {
                    let rows: Vec<Vec<f64>> =
                        serde_json::from_value(d.clone()).map_err(|_| malformed(a))?;
                    Criterion::CoRanking(CoRankingMatrix::new(elements.clone(), rows, anti_tol)?)
                }
            };
            criteria.push(c);
        }
        FractionalCriteria::new(
            elements,
            self.weights.clone(),
            self.epsilons.clone(),
            criteria,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionFile {
    pub k: usize,
    pub p: Vec<f64>,
}

impl DistributionFile {
    pub fn build(&self) -> Result<RankDistribution> {
        if self.p.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: self.p.len(),
            });
        }
        RankDistribution::new(self.p.clone())
    }
}

pub fn read_distribution(path: &Path) -> Result<RankDistribution> {
    read_json::<DistributionFile>(path)?.build()
}

pub fn read_criteria(path: &Path, anti_tol: f64) -> Result<FractionalCriteria> {
    read_json::<CriteriaFile>(path)?.build(anti_tol)
}
