//! File formats: rule sets and classifications as versioned JSON, P-position
//! tables as CSV or JSON, and family enumerations as CSV.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classifier::{ClassificationResult, Family, FamilyMember};
use crate::games::{ConstraintSpec, ConstraintTable, GameError, GameFamily, RuleSet};
use crate::quadfield::{BeattyPair, QuadError, QuadraticNumber};
use crate::solver::{PTable, Source, TableError};

pub const SCHEMA: &str = "beatty-games/v1";

/// Digits after the point in the plotting column of the enumeration CSV.
const DECIMAL_DIGITS: u32 = 12;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("row {row}: {reason}")]
    Row { row: usize, reason: String },
}

#[derive(Serialize, Deserialize)]
struct TableEntry {
    x1: u64,
    y1: u64,
    x0: u64,
    value: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ConstraintWire {
    Constant { t: i64 },
    Beatty { alpha: QuadraticNumber },
    TargetBeatty { alpha: QuadraticNumber },
    ParityHalf,
    Table { strict: bool, entries: Vec<TableEntry> },
}

impl From<&ConstraintSpec> for ConstraintWire {
    fn from(spec: &ConstraintSpec) -> Self {
        match spec {
            ConstraintSpec::Constant(t) => ConstraintWire::Constant { t: *t },
            ConstraintSpec::BeattyDelta(pair) => ConstraintWire::Beatty { alpha: pair.alpha() },
            ConstraintSpec::TargetBeatty(pair) => ConstraintWire::TargetBeatty { alpha: pair.alpha() },
            ConstraintSpec::ParityHalf => ConstraintWire::ParityHalf,
            ConstraintSpec::ExplicitTable(table) => ConstraintWire::Table {
                strict: table.is_strict(),
                entries: table
                    .entries()
                    .iter()
                    .map(|(&(x1, y1, x0), &value)| TableEntry { x1, y1, x0, value })
                    .collect(),
            },
        }
    }
}

impl TryFrom<ConstraintWire> for ConstraintSpec {
    type Error = GameError;

    fn try_from(wire: ConstraintWire) -> Result<Self, GameError> {
        Ok(match wire {
            ConstraintWire::Constant { t } => ConstraintSpec::constant(t)?,
            ConstraintWire::Beatty { alpha } => ConstraintSpec::beatty(alpha)?,
            ConstraintWire::TargetBeatty { alpha } => ConstraintSpec::target_beatty(alpha)?,
            ConstraintWire::ParityHalf => ConstraintSpec::ParityHalf,
            ConstraintWire::Table { strict, entries } => {
                let map: BTreeMap<_, _> = entries.into_iter().map(|e| ((e.x1, e.y1, e.x0), e.value)).collect();
                ConstraintSpec::ExplicitTable(ConstraintTable::new(map, strict)?)
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
struct RuleSetWire {
    schema: String,
    family: GameFamily,
    constraint: ConstraintWire,
}

fn check_schema(schema: &str) -> Result<(), FormatError> {
    if schema == SCHEMA {
        Ok(())
    } else {
        Err(FormatError::Schema(schema.to_owned()))
    }
}

pub fn rules_to_json(rules: &RuleSet) -> String {
    let wire = RuleSetWire {
        schema: SCHEMA.to_owned(),
        family: rules.family(),
        constraint: rules.constraint().into(),
    };
    serde_json::to_string_pretty(&wire).expect("rule sets always serialize")
}

pub fn rules_from_json(text: &str) -> Result<RuleSet, FormatError> {
    let wire: RuleSetWire = serde_json::from_str(text)?;
    check_schema(&wire.schema)?;
    Ok(RuleSet::new(wire.family, wire.constraint.try_into()?)?)
}

pub fn constraint_to_json(spec: &ConstraintSpec) -> String {
    serde_json::to_string(&ConstraintWire::from(spec)).expect("constraints always serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct TableRow {
    n: usize,
    a_n: u64,
    b_n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    floor_n_alpha: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    floor_n_beta: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delta2: Option<u64>,
}

fn rows(table: &PTable, pair: Option<&BeattyPair>) -> Result<Vec<TableRow>, QuadError> {
    table
        .pairs()
        .iter()
        .enumerate()
        .map(|(n, &(a_n, b_n))| {
            let k = n as u64;
            Ok(TableRow {
                n,
                a_n,
                b_n,
                floor_n_alpha: pair.map(|p| p.a(k)),
                floor_n_beta: pair.map(|p| p.b(k)),
                delta2: match pair {
                    Some(p) if n > 0 => Some(p.delta2(k)?),
                    _ => None,
                },
            })
        })
        .collect()
}

fn from_rows(rows: Vec<TableRow>, source: Source) -> Result<PTable, FormatError> {
    for (i, row) in rows.iter().enumerate() {
        if row.n != i {
            return Err(FormatError::Row { row: i, reason: format!("expected n = {i}, found {}", row.n) });
        }
    }
    Ok(PTable::new(rows.into_iter().map(|r| (r.a_n, r.b_n)).collect(), source))
}

/// CSV with columns `n, a_n, b_n`, plus `floor_n_alpha, floor_n_beta, delta2`
/// when a Beatty pair is supplied (`delta2` is blank at `n = 0`).
pub fn table_to_csv(table: &PTable, pair: Option<&BeattyPair>) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if pair.is_some() {
        w.write_record(["n", "a_n", "b_n", "floor_n_alpha", "floor_n_beta", "delta2"])?;
    } else {
        w.write_record(["n", "a_n", "b_n"])?;
    }
    for row in rows(table, pair)? {
        let mut rec = vec![row.n.to_string(), row.a_n.to_string(), row.b_n.to_string()];
        if pair.is_some() {
            rec.push(row.floor_n_alpha.map_or(String::new(), |v| v.to_string()));
            rec.push(row.floor_n_beta.map_or(String::new(), |v| v.to_string()));
            rec.push(row.delta2.map_or(String::new(), |v| v.to_string()));
        }
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Row { row: 0, reason: e.to_string() })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Reads the pairs back from [`table_to_csv`] output; extra columns are ignored.
pub fn table_from_csv(text: &str, source: Source) -> Result<PTable, FormatError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows = r.deserialize().collect::<Result<Vec<TableRow>, _>>()?;
    from_rows(rows, source)
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    schema: String,
    source: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alpha: Option<QuadraticNumber>,
    rows: Vec<TableRow>,
}

pub fn table_to_json(table: &PTable, pair: Option<&BeattyPair>) -> Result<String, FormatError> {
    let wire = TableWire {
        schema: SCHEMA.to_owned(),
        source: table.source(),
        alpha: pair.map(|p| p.alpha()),
        rows: rows(table, pair)?,
    };
    Ok(serde_json::to_string_pretty(&wire)?)
}

/// The table and, when present, the `alpha` its Beatty columns were built from.
pub fn table_from_json(text: &str) -> Result<(PTable, Option<QuadraticNumber>), FormatError> {
    let wire: TableWire = serde_json::from_str(text)?;
    check_schema(&wire.schema)?;
    Ok((from_rows(wire.rows, wire.source)?, wire.alpha))
}

#[derive(Serialize, Deserialize)]
struct ClassificationWire {
    schema: String,
    #[serde(flatten)]
    result: ClassificationResult,
}

pub fn classification_to_json(result: &ClassificationResult) -> String {
    let wire = ClassificationWire { schema: SCHEMA.to_owned(), result: result.clone() };
    serde_json::to_string_pretty(&wire).expect("classifications always serialize")
}

pub fn classification_from_json(text: &str) -> Result<ClassificationResult, FormatError> {
    let wire: ClassificationWire = serde_json::from_str(text)?;
    check_schema(&wire.schema)?;
    Ok(wire.result)
}

/// CSV columns `family, t_or_p, q, beta_floor, alpha_p, alpha_q, alpha_r,
/// alpha_D, alpha_decimal_approx`. The decimal column is a truncation meant
/// for plotting; the four integer columns are the exact value.
pub fn families_to_csv(members: &[FamilyMember]) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "family",
        "t_or_p",
        "q",
        "beta_floor",
        "alpha_p",
        "alpha_q",
        "alpha_r",
        "alpha_D",
        "alpha_decimal_approx",
    ])?;
    for m in members {
        let (t_or_p, q) = match m.generator {
            Family::I { t } => (t.to_string(), String::new()),
            Family::II { p, q, .. } | Family::III { p, q } => (p.to_string(), q.to_string()),
            Family::IV | Family::Incompatible => (String::new(), String::new()),
        };
        let a = m.alpha();
        w.write_record([
            m.generator.label().to_owned(),
            t_or_p,
            q,
            m.classification.beta_floor.to_string(),
            a.p().to_string(),
            a.q().to_string(),
            a.r().to_string(),
            a.radicand().to_string(),
            a.to_decimal_string(DECIMAL_DIGITS),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| FormatError::Row { row: 0, reason: e.to_string() })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
