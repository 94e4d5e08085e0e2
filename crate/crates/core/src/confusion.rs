//! Augmented confusion matrices and the empirical distributions derived from them.
//!
//! An augmented confusion matrix has one row per true class and one column per
//! predicted class plus a trailing reject column, so an `m`-class problem is
//! stored as an `m x (m + 1)` table of counts. Matrices without the reject
//! column are accepted and padded with zeros.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Tolerance used when checking that probabilities lie on the simplex.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(InputFormat::Json),
            "csv" => Ok(InputFormat::Csv),
            other => Err(Error::InvalidArgument(format!("unknown input format `{other}`"))),
        }
    }
}

/// Count table with `m` rows and `m + 1` columns; the last column holds rejections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentedConfusionMatrix {
    classes: usize,
    counts: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    class_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    model_name: Option<String>,
}

impl AugmentedConfusionMatrix {
    /// Builds a validated matrix. Rows of length `m` are padded with an empty
    /// reject column; rows of length `m + 1` are taken as is.
    pub fn new(rows: Vec<Vec<u64>>) -> Result<Self> {
        let classes = rows.len();
        if classes < 2 {
            return Err(Error::TooFewClasses(classes));
        }
        let width = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::RaggedRow { row: i + 1, expected: width, found: row.len() });
            }
        }
        if width != classes && width != classes + 1 {
            return Err(Error::ColumnCount { rows: classes, columns: width });
        }

        let mut counts = Vec::with_capacity(classes * (classes + 1));
        for (i, row) in rows.iter().enumerate() {
            if row.iter().all(|&c| c == 0) {
                return Err(Error::ZeroRowTotal { row: i + 1 });
            }
            counts.extend_from_slice(row);
            if width == classes {
                counts.push(0);
            }
        }
        Ok(Self { classes, counts, class_labels: None, model_name: None })
    }

    /// Like [`new`](Self::new) but accepts signed entries, rejecting negatives.
    pub fn from_signed(rows: Vec<Vec<i64>>) -> Result<Self> {
        let mut converted = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, value) in row.into_iter().enumerate() {
                if value < 0 {
                    return Err(Error::NegativeEntry { row: i + 1, column: j + 1, value });
                }
                out.push(value as u64);
            }
            converted.push(out);
        }
        Self::new(converted)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.model_name = Some(name.into());
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.classes {
            return Err(Error::LabelCount { expected: self.classes, found: labels.len() });
        }
        self.class_labels = Some(labels);
        Ok(self)
    }

    /// Number of true classes `m`.
    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Number of columns, `m + 1`.
    pub fn columns(&self) -> usize {
        self.classes + 1
    }

    pub fn reject_column(&self) -> usize {
        self.classes
    }

    pub fn name(&self) -> Option<&str> {
        self.model_name.as_deref()
    }

    /// Labels for the `m` classes followed by `"reject"`.
    pub fn labels(&self) -> Vec<String> {
        let mut labels = match &self.class_labels {
            Some(l) => l.clone(),
            None => (1..=self.classes).map(|i| i.to_string()).collect(),
        };
        labels.push("reject".to_string());
        labels
    }

    /// Count in row `i`, column `j` (zero-based).
    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.classes && j <= self.classes, "index ({i}, {j}) out of bounds");
        self.counts[i * self.columns() + j]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        let w = self.columns();
        &self.counts[i * w..(i + 1) * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u64]> {
        self.counts.chunks(self.columns())
    }

    pub fn row_total(&self, i: usize) -> u64 {
        self.row(i).iter().sum()
    }

    pub fn column_total(&self, j: usize) -> u64 {
        (0..self.classes).map(|i| self.get(i, j)).sum()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.rows().map(<[u64]>::to_vec).collect()
    }

    pub fn distribution(&self) -> EmpiricalDistribution {
        empirical_distributions(self)
    }
}

impl fmt::Display for AugmentedConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(u64::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// A matrix as read from an input file, plus the optional intuitive rank letter
/// that fixture files carry alongside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputRecord {
    pub matrix: AugmentedConfusionMatrix,
    pub intuition: Option<String>,
}

/// Parses a single matrix. Batches with more than one entry are rejected.
pub fn parse_matrix(raw: &str, format: InputFormat) -> Result<AugmentedConfusionMatrix> {
    let mut records = parse_records(raw, format)?;
    match records.len() {
        1 => Ok(records.remove(0).matrix),
        k => Err(Error::Parse { line: None, message: format!("expected one matrix, found {k}") }),
    }
}

/// Parses every matrix in the input. JSON may hold a bare 2-D array, an object
/// `{"name", "matrix"}`, or an array of either. CSV holds exactly one matrix.
pub fn parse_records(raw: &str, format: InputFormat) -> Result<Vec<InputRecord>> {
    match format {
        InputFormat::Json => parse_json(raw),
        InputFormat::Csv => parse_csv(raw).map(|m| vec![InputRecord { matrix: m, intuition: None }]),
    }
}

fn parse_json(raw: &str) -> Result<Vec<InputRecord>> {
    let value: Value =
        serde_json::from_str(raw).map_err(|e| Error::Parse { line: Some(e.line()), message: e.to_string() })?;
    match &value {
        Value::Object(_) => Ok(vec![json_record(&value)?]),
        Value::Array(items) if is_grid(&value) || items.is_empty() => Ok(vec![json_record(&value)?]),
        Value::Array(items) => items.iter().map(json_record).collect(),
        _ => Err(json_shape_error("expected an array or an object")),
    }
}

// A grid is an array whose elements are arrays of numbers.
fn is_grid(value: &Value) -> bool {
    match value {
        Value::Array(rows) => {
            rows.iter().all(|r| matches!(r, Value::Array(cells) if cells.iter().all(Value::is_number)))
        }
        _ => false,
    }
}

fn json_shape_error(message: &str) -> Error {
    Error::Parse { line: None, message: message.to_string() }
}

fn json_record(value: &Value) -> Result<InputRecord> {
    match value {
        Value::Array(_) => Ok(InputRecord { matrix: json_grid(value)?, intuition: None }),
        Value::Object(map) => {
            let grid = map.get("matrix").ok_or_else(|| json_shape_error("object has no `matrix` field"))?;
            let mut matrix = json_grid(grid)?;
            if let Some(name) = map.get("name") {
                let name = name.as_str().ok_or_else(|| json_shape_error("`name` must be a string"))?;
                matrix = matrix.with_name(name);
            }
            if let Some(labels) = map.get("labels") {
                let labels: Vec<String> = serde_json::from_value(labels.clone())
                    .map_err(|_| json_shape_error("`labels` must be an array of strings"))?;
                matrix = matrix.with_labels(labels)?;
            }
            let intuition = match map.get("intuition") {
                Some(Value::String(s)) => Some(s.clone()),
                Some(_) => return Err(json_shape_error("`intuition` must be a string")),
                None => None,
            };
            Ok(InputRecord { matrix, intuition })
        }
        _ => Err(json_shape_error("expected a matrix or an object with a `matrix` field")),
    }
}

fn json_grid(value: &Value) -> Result<AugmentedConfusionMatrix> {
    let rows = value.as_array().ok_or_else(|| json_shape_error("matrix must be a 2-D array"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().ok_or_else(|| json_shape_error(&format!("matrix row {} is not an array", i + 1)))?;
        let mut parsed = Vec::with_capacity(cells.len());
        for (j, cell) in cells.iter().enumerate() {
            let v = cell.as_i64().ok_or_else(|| {
                json_shape_error(&format!("entry at row {}, column {} is not an integer", i + 1, j + 1))
            })?;
            parsed.push(v);
        }
        out.push(parsed);
    }
    AugmentedConfusionMatrix::from_signed(out)
}

fn parse_csv(raw: &str) -> Result<AugmentedConfusionMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(raw.as_bytes());

    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record
            .map_err(|e| Error::Parse { line: e.position().map(|p| p.line() as usize), message: e.to_string() })?;
        let line = record.position().map(|p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let parsed: std::result::Result<Vec<i64>, _> = record.iter().map(str::parse::<i64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            // Only the first line may be a header.
            Err(_) if index == 0 => continue,
            Err(e) => {
                return Err(Error::Parse { line, message: format!("non-integer entry: {e}") });
            }
        }
    }
    AugmentedConfusionMatrix::from_signed(rows)
}

/// Joint and marginal probabilities obtained by dividing counts by `n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalDistribution {
    classes: usize,
    joint: Vec<f64>,
    row_marginal: Vec<f64>,
    col_marginal: Vec<f64>,
    n: u64,
}

impl EmpiricalDistribution {
    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn columns(&self) -> usize {
        self.classes + 1
    }

    pub fn joint(&self, i: usize, j: usize) -> f64 {
        self.joint[i * self.columns() + j]
    }

    pub fn joint_row(&self, i: usize) -> &[f64] {
        let w = self.columns();
        &self.joint[i * w..(i + 1) * w]
    }

    /// Target marginal p(t), length `m`.
    pub fn row_marginal(&self) -> &[f64] {
        &self.row_marginal
    }

    /// Output marginal p(y), length `m + 1`.
    pub fn col_marginal(&self) -> &[f64] {
        &self.col_marginal
    }

    /// Target marginal with an explicit zero at the reject position, so that it
    /// shares the `m + 1` support of the output marginal.
    pub fn padded_row_marginal(&self) -> Vec<f64> {
        let mut p = self.row_marginal.clone();
        p.push(0.0);
        p
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn joint_cells(&self) -> &[f64] {
        &self.joint
    }
}

pub fn empirical_distributions(matrix: &AugmentedConfusionMatrix) -> EmpiricalDistribution {
    let n = matrix.total();
    let total = n as f64;
    let classes = matrix.classes();
    let columns = matrix.columns();
    let joint: Vec<f64> = matrix.counts.iter().map(|&c| c as f64 / total).collect();
    let row_marginal = joint.chunks(columns).map(|r| r.iter().sum()).collect();
    let col_marginal = (0..columns).map(|j| (0..classes).map(|i| joint[i * columns + j]).sum()).collect();
    EmpiricalDistribution { classes, joint, row_marginal, col_marginal, n }
}

/// Binary confusion in the `[[TN, FP, RN], [FN, TP, RP]]` layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryConfusion {
    pub tn: u64,
    pub fp: u64,
    pub rn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tp: u64,
    pub rp: u64,
}

impl BinaryConfusion {
    pub fn new(tn: u64, fp: u64, rn: u64, fn_: u64, tp: u64, rp: u64) -> Result<Self> {
        let b = Self { tn, fp, rn, fn_, tp, rp };
        if b.c1() == 0 {
            return Err(Error::ZeroRowTotal { row: 1 });
        }
        if b.c2() == 0 {
            return Err(Error::ZeroRowTotal { row: 2 });
        }
        Ok(b)
    }

    pub fn c1(&self) -> u64 {
        self.tn + self.fp + self.rn
    }

    pub fn c2(&self) -> u64 {
        self.fn_ + self.tp + self.rp
    }

    pub fn n(&self) -> u64 {
        self.c1() + self.c2()
    }

    pub fn to_matrix(&self) -> AugmentedConfusionMatrix {
        AugmentedConfusionMatrix::new(vec![vec![self.tn, self.fp, self.rn], vec![self.fn_, self.tp, self.rp]])
            .expect("binary confusion has positive row totals")
    }
}

pub fn to_binary(matrix: &AugmentedConfusionMatrix) -> Result<BinaryConfusion> {
    if matrix.classes() != 2 {
        return Err(Error::NotBinary(matrix.classes()));
    }
    BinaryConfusion::new(
        matrix.get(0, 0),
        matrix.get(0, 1),
        matrix.get(0, 2),
        matrix.get(1, 0),
        matrix.get(1, 1),
        matrix.get(1, 2),
    )
}
