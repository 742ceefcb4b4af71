//! Country records, CSV ingestion and dataset validation.
//!
//! Percentages are kept exactly as written in the source file (`46` means
//! 46%). Conversion to fractions happens inside the computations that need
//! it. Optional columns that are missing or empty are `None`, never zero.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const COL_COUNTRY: &str = "country";
pub const COL_TARIFF_CHARGED: &str = "tariff_charged_to_usa_pct";
pub const COL_RECIPROCAL: &str = "usa_reciprocal_tariff_pct";
pub const COL_ECI: &str = "eci";
pub const COL_EXPORT_VALUE: &str = "export_value_busd";
pub const COL_COFFEE_SHARE: &str = "coffee_share_pct";

/// Canonical column order used when serializing.
pub const HEADER: [&str; 6] = [
    COL_COUNTRY,
    COL_TARIFF_CHARGED,
    COL_RECIPROCAL,
    COL_ECI,
    COL_EXPORT_VALUE,
    COL_COFFEE_SHARE,
];

/// Upper bound (exclusive) accepted for tariff percentages.
pub const MAX_TARIFF_PCT: f64 = 1000.0;

/// Coffee shares are "approximate"; totals inside this band pass silently.
pub const SHARE_SUM_BAND: (f64, f64) = (95.0, 105.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountryRecord {
    pub name: String,
    /// Tariff the partner charges on US goods, in percent.
    pub tariff_charged_to_usa: f64,
    /// Proposed US reciprocal tariff on the partner, in percent.
    pub usa_reciprocal_tariff: f64,
    pub eci: Option<f64>,
    pub export_value_usd_billions: Option<f64>,
    pub coffee_share: Option<f64>,
}

impl CountryRecord {
    pub fn new(name: impl Into<String>, charged: f64, reciprocal: f64) -> Self {
        Self {
            name: name.into(),
            tariff_charged_to_usa: charged,
            usa_reciprocal_tariff: reciprocal,
            eci: None,
            export_value_usd_billions: None,
            coffee_share: None,
        }
    }

    pub fn with_eci(mut self, eci: f64) -> Self {
        self.eci = Some(eci);
        self
    }

    pub fn with_export_value(mut self, busd: f64) -> Self {
        self.export_value_usd_billions = Some(busd);
        self
    }

    pub fn with_coffee_share(mut self, pct: f64) -> Self {
        self.coffee_share = Some(pct);
        self
    }
}

/// An ordered, immutable collection of country records.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Dataset {
    records: Vec<CountryRecord>,
    provenance: String,
}

impl Dataset {
    pub fn new(records: Vec<CountryRecord>, provenance: impl Into<String>) -> Self {
        Self {
            records,
            provenance: provenance.into(),
        }
    }

    pub fn records(&self) -> &[CountryRecord] {
        &self.records
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&CountryRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    /// `(tariff charged to the USA, US reciprocal tariff)` pairs in record order.
    pub fn tariff_pairs(&self) -> Vec<(f64, f64)> {
        self.records
            .iter()
            .map(|r| (r.tariff_charged_to_usa, r.usa_reciprocal_tariff))
            .collect()
    }

    /// Serializes with the canonical header. Absent optionals become empty cells.
    pub fn to_csv(&self) -> String {
        let mut wtr = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        wtr.write_record(HEADER).expect("write to Vec cannot fail");
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.records {
            wtr.write_record([
                r.name.clone(),
                r.tariff_charged_to_usa.to_string(),
                r.usa_reciprocal_tariff.to_string(),
                opt(r.eci),
                opt(r.export_value_usd_billions),
                opt(r.coffee_share),
            ])
            .expect("write to Vec cannot fail");
        }
        String::from_utf8(wtr.into_inner().expect("flush to Vec cannot fail"))
            .expect("input was UTF-8")
    }
}

/// One diagnostic. `row` is the zero-based record index, `None` for
/// dataset-level findings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub row: Option<usize>,
    pub field: String,
    pub message: String,
}

impl Issue {
    pub fn new(row: Option<usize>, field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            row,
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.row {
            Some(row) => write!(f, "record {row}, `{}`: {}", self.field, self.message),
            None => write!(f, "`{}`: {}", self.field, self.message),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    /// Converts a report with errors into [`Error::Validation`].
    pub fn into_result(self) -> Result<Vec<Issue>> {
        if self.errors.is_empty() {
            Ok(self.warnings)
        } else {
            Err(Error::Validation(self.errors))
        }
    }
}

/// Result of [`parse_dataset`]: the records plus ingestion warnings
/// (currently only ignored extra columns).
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedDataset {
    pub dataset: Dataset,
    pub warnings: Vec<Issue>,
}

struct ColumnMap {
    country: usize,
    charged: usize,
    reciprocal: usize,
    eci: Option<usize>,
    export_value: Option<usize>,
    coffee_share: Option<usize>,
}

/// Parses CSV text with the documented header. Columns are matched by name,
/// so optional columns may appear in any order or not at all.
pub fn parse_dataset(text: &str) -> Result<ParsedDataset> {
    check_quotes(text)?;

    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let headers = rdr
        .headers()
        .map_err(|e| csv_error(&e, 1))?
        .clone();

    let mut warnings = Vec::new();
    let mut seen = HashSet::new();
    for (i, h) in headers.iter().enumerate() {
        if !seen.insert(h) {
            return Err(Error::Csv {
                row: 1,
                message: format!("duplicate column `{h}` in header"),
            });
        }
        if !HEADER.contains(&h) {
            warnings.push(Issue::new(
                None,
                h,
                format!("unknown column {} ignored", i + 1),
            ));
        }
    }

    let find = |name: &str| headers.iter().position(|h| h == name);
    let required = |name: &str| find(name).ok_or_else(|| Error::MissingColumn(name.to_string()));
    let cols = ColumnMap {
        country: required(COL_COUNTRY)?,
        charged: required(COL_TARIFF_CHARGED)?,
        reciprocal: required(COL_RECIPROCAL)?,
        eci: find(COL_ECI),
        export_value: find(COL_EXPORT_VALUE),
        coffee_share: find(COL_COFFEE_SHARE),
    };

    let mut records = Vec::new();
    for (idx, result) in rdr.records().enumerate() {
        // header is line 1
        let fallback_line = idx + 2;
        let rec = result.map_err(|e| csv_error(&e, fallback_line))?;
        let line = rec
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(fallback_line);

        let number = |col: usize, name: &str| -> Result<Option<f64>> {
            let raw = rec.get(col).unwrap_or("");
            if raw.is_empty() {
                return Ok(None);
            }
            match raw.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(Some(v)),
                _ => Err(Error::NotNumeric {
                    row: line,
                    column: name.to_string(),
                    value: raw.to_string(),
                }),
            }
        };
        let required_number = |col: usize, name: &str| -> Result<f64> {
            number(col, name)?.ok_or_else(|| Error::Csv {
                row: line,
                message: format!("required column `{name}` is empty"),
            })
        };

        records.push(CountryRecord {
            name: rec.get(cols.country).unwrap_or("").to_string(),
            tariff_charged_to_usa: required_number(cols.charged, COL_TARIFF_CHARGED)?,
            usa_reciprocal_tariff: required_number(cols.reciprocal, COL_RECIPROCAL)?,
            eci: cols.eci.map(|c| number(c, COL_ECI)).transpose()?.flatten(),
            export_value_usd_billions: cols
                .export_value
                .map(|c| number(c, COL_EXPORT_VALUE))
                .transpose()?
                .flatten(),
            coffee_share: cols
                .coffee_share
                .map(|c| number(c, COL_COFFEE_SHARE))
                .transpose()?
                .flatten(),
        });
    }

    Ok(ParsedDataset {
        dataset: Dataset::new(records, ""),
        warnings,
    })
}

fn csv_error(err: &csv::Error, fallback_line: usize) -> Error {
    let row = err
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback_line);
    let message = match err.kind() {
        csv::ErrorKind::UnequalLengths {
            expected_len, len, ..
        } => format!("wrong column count: expected {expected_len}, found {len}"),
        _ => err.to_string(),
    };
    Error::Csv { row, message }
}

/// The csv reader accepts an unterminated quote and swallows the rest of the
/// file into one field. Escaped quotes come in pairs, so an odd quote count
/// means some field was never closed.
fn check_quotes(text: &str) -> Result<()> {
    let mut open_line = None;
    let mut in_quotes = false;
    for (i, line) in text.lines().enumerate() {
        for c in line.chars() {
            if c == '"' {
                in_quotes = !in_quotes;
                if in_quotes {
                    open_line.get_or_insert(i + 1);
                } else {
                    open_line = None;
                }
            }
        }
    }
    match (in_quotes, open_line) {
        (true, Some(row)) => Err(Error::Csv {
            row,
            message: "unbalanced quotes".to_string(),
        }),
        _ => Ok(()),
    }
}

/// Checks record-level and dataset-level rules. Never fails; callers decide
/// what to do with the report.
pub fn validate_dataset(dataset: &Dataset) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut names = HashSet::new();

    for (i, r) in dataset.records().iter().enumerate() {
        let row = Some(i);
        if r.name.trim().is_empty() {
            report
                .errors
                .push(Issue::new(row, COL_COUNTRY, "country name is empty"));
        } else if !names.insert(r.name.as_str()) {
            report.errors.push(Issue::new(
                row,
                COL_COUNTRY,
                format!("duplicate country name {:?}", r.name),
            ));
        }

        for (field, value) in [
            (COL_TARIFF_CHARGED, r.tariff_charged_to_usa),
            (COL_RECIPROCAL, r.usa_reciprocal_tariff),
        ] {
            if !value.is_finite() {
                report.errors.push(Issue::new(row, field, "value is not finite"));
            } else if value < 0.0 {
                report
                    .errors
                    .push(Issue::new(row, field, format!("negative value {value}")));
            } else if value >= MAX_TARIFF_PCT {
                report.errors.push(Issue::new(
                    row,
                    field,
                    format!("tariff {value} outside [0, {MAX_TARIFF_PCT})"),
                ));
            }
        }

        if let Some(eci) = r.eci {
            if !eci.is_finite() {
                report.errors.push(Issue::new(row, COL_ECI, "value is not finite"));
            }
        }
        if let Some(v) = r.export_value_usd_billions {
            if !v.is_finite() || v < 0.0 {
                report.errors.push(Issue::new(
                    row,
                    COL_EXPORT_VALUE,
                    format!("export value {v} must be a nonnegative number"),
                ));
            }
        }
        if let Some(s) = r.coffee_share {
            if !(0.0..=100.0).contains(&s) {
                report.errors.push(Issue::new(
                    row,
                    COL_COFFEE_SHARE,
                    format!("share {s} outside [0, 100]"),
                ));
            }
        }
    }

    let shares: Vec<f64> = dataset.records().iter().filter_map(|r| r.coffee_share).collect();
    if !shares.is_empty() {
        let total: f64 = shares.iter().sum();
        let (lo, hi) = SHARE_SUM_BAND;
        if !(lo..=hi).contains(&total) {
            report.warnings.push(Issue::new(
                None,
                COL_COFFEE_SHARE,
                format!("coffee shares sum to {total}, outside [{lo}, {hi}]"),
            ));
        }
    }

    report
}
