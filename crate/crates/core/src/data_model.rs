//! Yearly incident dataset: parsing, validation and aggregation.
//!
//! Canonical input is CSV:
//!
//! ```text
//! # year=2024
//! month,shootings,killed,wounded,days_without_shooting
//! 1,50,95,170,14
//! ...
//! ```
//!
//! Rows may appear in any order; `days_in_month` is derived from the calendar.
//! A JSON mirror (`{"year": 2024, "records": [{"month": 1, ...}]}`) is accepted too.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CSV_COLUMNS: [&str; 5] = ["month", "shootings", "killed", "wounded", "days_without_shooting"];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DataError {
    #[error("line 1: expected `# year=<YYYY>`, found {found:?}")]
    MissingYear { found: String },
    #[error("row {row}: header must contain columns {expected:?}, found {found:?}")]
    BadHeader { row: usize, expected: Vec<String>, found: Vec<String> },
    #[error("row {row}, field `{field}`: malformed number {value:?}")]
    Malformed { row: usize, field: String, value: String },
    #[error("row {row}, field `{field}`: negative count {value}")]
    NegativeCount { row: usize, field: String, value: i64 },
    #[error("row {row}, field `month`: month {value} outside 1..12")]
    MonthOutOfRange { row: usize, value: i64 },
    #[error("row {row}, field `month`: duplicate month {month}")]
    DuplicateMonth { row: usize, month: u32 },
    #[error("missing month {month}")]
    MissingMonth { month: u32 },
    #[error("row {row}, field `days_without_shooting`: {days} exceeds the {days_in_month} days of month {month}")]
    DaysExceedMonth { row: usize, month: u32, days: u64, days_in_month: u32 },
    #[error("row {row}, field `days_without_shooting`: month {month} has no shootings, so all {days_in_month} days must be shooting-free (found {days})")]
    ShootingFreeMismatch { row: usize, month: u32, days: u64, days_in_month: u32 },
    #[error("row {row}: {message}")]
    Syntax { row: usize, message: String },
}

/// One month of statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonthlyRecord {
    pub month: u32,
    pub shootings: u64,
    pub killed: u64,
    pub wounded: u64,
    pub days_without_shooting: u32,
    pub days_in_month: u32,
}

/// Twelve validated records for one calendar year, ordered January..December.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YearDataset {
    year: i32,
    records: Vec<MonthlyRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AggregateTotals {
    pub total_shootings: u64,
    pub total_killed: u64,
    pub total_wounded: u64,
    pub min_killed: u64,
    pub max_killed: u64,
    pub min_wounded: u64,
    pub max_wounded: u64,
}

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_month(year: i32, month: u32) -> u32 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap_year(year) => 29,
        2 => 28,
        _ => panic!("month {month} outside 1..12"),
    }
}

/// A row before validation; signed so negative counts can be reported.
#[derive(Debug, Clone, Copy)]
struct RawRow {
    row: usize,
    month: i64,
    shootings: i64,
    killed: i64,
    wounded: i64,
    days_without_shooting: i64,
}

impl YearDataset {
    /// Validates raw values and orders them by month.
    fn from_raw(year: i32, rows: &[RawRow]) -> Result<Self, DataError> {
        let mut by_month: BTreeMap<u32, MonthlyRecord> = BTreeMap::new();
        for r in rows {
            if !(1..=12).contains(&r.month) {
                return Err(DataError::MonthOutOfRange { row: r.row, value: r.month });
            }
            let month = r.month as u32;
            let count = |field: &str, v: i64| {
                u64::try_from(v).map_err(|_| DataError::NegativeCount { row: r.row, field: field.into(), value: v })
            };
            let shootings = count("shootings", r.shootings)?;
            let killed = count("killed", r.killed)?;
            let wounded = count("wounded", r.wounded)?;
            let days = count("days_without_shooting", r.days_without_shooting)?;
            let dim = days_in_month(year, month);
            if days > dim as u64 {
                return Err(DataError::DaysExceedMonth { row: r.row, month, days, days_in_month: dim });
            }
            if shootings == 0 && days != dim as u64 {
                return Err(DataError::ShootingFreeMismatch { row: r.row, month, days, days_in_month: dim });
            }
            let rec = MonthlyRecord {
                month,
                shootings,
                killed,
                wounded,
                days_without_shooting: days as u32,
                days_in_month: dim,
            };
            if by_month.insert(month, rec).is_some() {
                return Err(DataError::DuplicateMonth { row: r.row, month });
            }
        }
        if let Some(month) = (1..=12).find(|m| !by_month.contains_key(m)) {
            return Err(DataError::MissingMonth { month });
        }
        Ok(Self { year, records: by_month.into_values().collect() })
    }

    /// Builds a dataset from already-typed records (any order). `days_in_month` is recomputed.
    pub fn from_records(year: i32, records: &[MonthlyRecord]) -> Result<Self, DataError> {
        let rows: Vec<RawRow> = records
            .iter()
            .enumerate()
            .map(|(i, r)| RawRow {
                row: i + 1,
                month: r.month as i64,
                shootings: r.shootings as i64,
                killed: r.killed as i64,
                wounded: r.wounded as i64,
                days_without_shooting: r.days_without_shooting as i64,
            })
            .collect();
        Self::from_raw(year, &rows)
    }

    pub fn year(&self) -> i32 {
        self.year
    }

    pub fn records(&self) -> &[MonthlyRecord] {
        &self.records
    }

    pub fn month(&self, month: u32) -> Option<&MonthlyRecord> {
        self.records.get(month.checked_sub(1)? as usize)
    }

    /// Canonical CSV text; `parse_dataset(ds.to_csv()) == ds`.
    pub fn to_csv(&self) -> String {
        let mut s = format!("# year={}\n{}\n", self.year, CSV_COLUMNS.join(","));
        for r in &self.records {
            let _ = writeln!(s, "{},{},{},{},{}", r.month, r.shootings, r.killed, r.wounded, r.days_without_shooting);
        }
        s
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row {
            month: u32,
            shootings: u64,
            killed: u64,
            wounded: u64,
            days_without_shooting: u32,
        }
        #[derive(Serialize)]
        struct Doc {
            year: i32,
            records: Vec<Row>,
        }
        let doc = Doc {
            year: self.year,
            records: self
                .records
                .iter()
                .map(|r| Row {
                    month: r.month,
                    shootings: r.shootings,
                    killed: r.killed,
                    wounded: r.wounded,
                    days_without_shooting: r.days_without_shooting,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }
}

/// Parses the canonical CSV. Row numbers in errors are 1-based file lines.
pub fn parse_dataset(text: &str) -> Result<YearDataset, DataError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let year = parse_year_line(first.trim_end_matches('\r'))?;

    let mut rdr =
        csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).flexible(true).from_reader(rest.as_bytes());
    let headers: Vec<String> = rdr
        .headers()
        .map_err(|e| DataError::Syntax { row: 2, message: e.to_string() })?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut column = [0usize; 5];
    for (slot, name) in column.iter_mut().zip(CSV_COLUMNS) {
        *slot = headers.iter().position(|h| h == name).ok_or_else(|| DataError::BadHeader {
            row: 2,
            expected: CSV_COLUMNS.iter().map(|s| s.to_string()).collect(),
            found: headers.clone(),
        })?;
    }

    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| DataError::Syntax {
            row: e.position().map_or(0, |p| p.line() as usize + 1),
            message: e.to_string(),
        })?;
        let row = rec.position().map_or(0, |p| p.line() as usize + 1);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let field = |k: usize| -> Result<i64, DataError> {
            let raw = rec.get(column[k]).unwrap_or("");
            raw.parse::<i64>().map_err(|_| DataError::Malformed {
                row,
                field: CSV_COLUMNS[k].into(),
                value: raw.into(),
            })
        };
        rows.push(RawRow {
            row,
            month: field(0)?,
            shootings: field(1)?,
            killed: field(2)?,
            wounded: field(3)?,
            days_without_shooting: field(4)?,
        });
    }
    YearDataset::from_raw(year, &rows)
}

fn parse_year_line(line: &str) -> Result<i32, DataError> {
    let err = || DataError::MissingYear { found: line.to_owned() };
    let body = line.trim().strip_prefix('#').ok_or_else(err)?;
    let (key, value) = body.split_once('=').ok_or_else(err)?;
    if key.trim() != "year" {
        return Err(err());
    }
    value.trim().parse::<i32>().map_err(|_| err())
}

/// Parses the JSON mirror. Row numbers are 1-based positions in `records`.
pub fn parse_dataset_json(text: &str) -> Result<YearDataset, DataError> {
    let doc: serde_json::Value =
        serde_json::from_str(text).map_err(|e| DataError::Syntax { row: e.line(), message: e.to_string() })?;
    let year =
        doc.get("year").and_then(serde_json::Value::as_i64).and_then(|y| i32::try_from(y).ok()).ok_or_else(|| {
            DataError::MissingYear { found: doc.get("year").map_or("<absent>".into(), |v| v.to_string()) }
        })?;
    let records = doc
        .get("records")
        .and_then(serde_json::Value::as_array)
        .ok_or_else(|| DataError::Syntax { row: 0, message: "`records` array missing".into() })?;
    let mut rows = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate() {
        let row = i + 1;
        let field = |k: usize| -> Result<i64, DataError> {
            let v = rec.get(CSV_COLUMNS[k]);
            v.and_then(serde_json::Value::as_i64).ok_or_else(|| DataError::Malformed {
                row,
                field: CSV_COLUMNS[k].into(),
                value: v.map_or("<absent>".into(), |v| v.to_string()),
            })
        };
        rows.push(RawRow {
            row,
            month: field(0)?,
            shootings: field(1)?,
            killed: field(2)?,
            wounded: field(3)?,
            days_without_shooting: field(4)?,
        });
    }
    YearDataset::from_raw(year, &rows)
}

/// Exact sums and extrema over the twelve records.
pub fn totals(ds: &YearDataset) -> AggregateTotals {
    let r = ds.records();
    AggregateTotals {
        total_shootings: r.iter().map(|m| m.shootings).sum(),
        total_killed: r.iter().map(|m| m.killed).sum(),
        total_wounded: r.iter().map(|m| m.wounded).sum(),
        min_killed: r.iter().map(|m| m.killed).min().unwrap_or(0),
        max_killed: r.iter().map(|m| m.killed).max().unwrap_or(0),
        min_wounded: r.iter().map(|m| m.wounded).min().unwrap_or(0),
        max_wounded: r.iter().map(|m| m.wounded).max().unwrap_or(0),
    }
}

/// Expected yearly totals to check an ingested dataset against.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anchors {
    pub total_shootings: Option<u64>,
    pub total_killed: Option<u64>,
}

impl Anchors {
    /// Gun Violence Archive 2024 totals: 586 mass shootings, 711 deaths.
    pub const GVA_2024: Anchors = Anchors { total_shootings: Some(586), total_killed: Some(711) };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorCheck {
    pub field: String,
    pub expected: u64,
    pub actual: u64,
    pub matched: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchorReport {
    pub checks: Vec<AnchorCheck>,
}

impl AnchorReport {
    pub fn all_matched(&self) -> bool {
        self.checks.iter().all(|c| c.matched)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &AnchorCheck> {
        self.checks.iter().filter(|c| !c.matched)
    }
}

pub fn validate_against_anchors(ds: &YearDataset, anchors: &Anchors) -> AnchorReport {
    let agg = totals(ds);
    let mut checks = Vec::new();
    let mut check = |field: &str, expected: Option<u64>, actual: u64| {
        if let Some(expected) = expected {
            checks.push(AnchorCheck { field: field.into(), expected, actual, matched: expected == actual });
        }
    };
    check("total_shootings", anchors.total_shootings, agg.total_shootings);
    check("total_killed", anchors.total_killed, agg.total_killed);
    AnchorReport { checks }
}

#[cfg(test)]
pub(crate) mod test_data {
    use super::*;

    /// Twelve rows for `year`; `f(month)` gives (shootings, killed, wounded, days_without).
    pub fn build(year: i32, f: impl Fn(u32) -> (u64, u64, u64, u32)) -> YearDataset {
        let records: Vec<MonthlyRecord> = (1..=12)
            .map(|m| {
                let (s, k, w, d) = f(m);
                MonthlyRecord {
                    month: m,
                    shootings: s,
                    killed: k,
                    wounded: w,
                    days_without_shooting: d,
                    days_in_month: days_in_month(year, m),
                }
            })
            .collect();
        YearDataset::from_records(year, &records).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_data::build;
    use super::*;

    fn csv_of(rows: &[&str]) -> String {
        format!("# year=2024\n{}\n{}\n", CSV_COLUMNS.join(","), rows.join("\n"))
    }

    fn twelve_rows() -> Vec<String> {
        (1..=12).map(|m| format!("{m},10,{},{},5", m * 2, m * 3)).collect()
    }

    #[test]
    fn leap_february() {
        let rows = twelve_rows();
        let ds = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap();
        assert_eq!(ds.month(2).unwrap().days_in_month, 29);
        assert_eq!(ds.year(), 2024);
        assert_eq!(days_in_month(2023, 2), 28);
        assert_eq!(days_in_month(1900, 2), 28);
        assert_eq!(days_in_month(2000, 2), 29);
    }

    #[test]
    fn missing_june() {
        let rows: Vec<String> = twelve_rows().into_iter().filter(|r| !r.starts_with("6,")).collect();
        let err = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap_err();
        assert_eq!(err, DataError::MissingMonth { month: 6 });
        assert_eq!(err.to_string(), "missing month 6");
    }

    #[test]
    fn errors_carry_row_and_field() {
        let mut rows = twelve_rows();
        rows[4] = "5,10,x,3,5".into();
        let err = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap_err();
        assert_eq!(err, DataError::Malformed { row: 7, field: "killed".into(), value: "x".into() });

        let mut rows = twelve_rows();
        rows[0] = "1,10,2,-3,5".into();
        let err = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap_err();
        assert_eq!(err, DataError::NegativeCount { row: 3, field: "wounded".into(), value: -3 });

        let mut rows = twelve_rows();
        rows[3] = "4,10,2,3,31".into();
        let err = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap_err();
        assert!(matches!(err, DataError::DaysExceedMonth { row: 6, month: 4, days: 31, days_in_month: 30 }));

        let mut rows = twelve_rows();
        rows[7] = "3,1,1,1,1".into();
        let err = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap_err();
        assert_eq!(err, DataError::DuplicateMonth { row: 10, month: 3 });

        let mut rows = twelve_rows();
        rows[1] = "2,0,0,0,28".into();
        let err = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap_err();
        assert!(matches!(err, DataError::ShootingFreeMismatch { row: 4, .. }));

        let mut rows = twelve_rows();
        rows[1] = "2,1.5,0,0,28".into();
        let err = parse_dataset(&csv_of(&rows.iter().map(String::as_str).collect::<Vec<_>>())).unwrap_err();
        assert!(matches!(err, DataError::Malformed { row: 4, ref field, .. } if field == "shootings"));
    }

    #[test]
    fn year_line_required() {
        let err = parse_dataset("month,shootings\n1,2\n").unwrap_err();
        assert!(matches!(err, DataError::MissingYear { .. }));
    }

    #[test]
    fn zero_totals() {
        let ds = build(2023, |m| (0, 0, 0, days_in_month(2023, m)));
        let t = totals(&ds);
        assert_eq!(t.total_killed, 0);
        assert_eq!((t.min_killed, t.max_killed), (0, 0));
        assert_eq!((t.min_wounded, t.max_wounded), (0, 0));
    }

    #[test]
    fn arithmetic_series_totals() {
        let ds = build(2024, |m| (1, m as u64, 0, 3));
        let t = totals(&ds);
        assert_eq!((t.total_killed, t.min_killed, t.max_killed), (78, 1, 12));
    }

    #[test]
    fn anchors() {
        let ds = build(2024, |m| if m == 1 { (586 - 11 * 48, 711 - 11 * 59, 0, 0) } else { (48, 59, 0, 0) });
        let report = validate_against_anchors(&ds, &Anchors::GVA_2024);
        assert!(report.all_matched());
        assert_eq!(report.checks.len(), 2);

        let ds = build(2024, |m| if m == 1 { (585 - 11 * 48, 711 - 11 * 59, 0, 0) } else { (48, 59, 0, 0) });
        let report = validate_against_anchors(&ds, &Anchors::GVA_2024);
        let bad: Vec<_> = report.mismatches().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].field, "total_shootings");

        assert!(validate_against_anchors(&ds, &Anchors::default()).checks.is_empty());
    }

    #[test]
    fn json_mirror_matches_csv() {
        let ds = build(2024, |m| (m as u64 + 3, m as u64 * 2, 7, 4));
        assert_eq!(parse_dataset_json(&ds.to_json()).unwrap(), ds);
        let err = parse_dataset_json(r#"{"year":2024,"records":[{"month":1,"shootings":"a"}]}"#).unwrap_err();
        assert!(matches!(err, DataError::Malformed { row: 1, ref field, .. } if field == "shootings"));
    }
}
