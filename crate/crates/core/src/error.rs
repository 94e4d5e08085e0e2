use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{}: {message}", line.map(|l| format!("line {l}")).unwrap_or_else(|| "input".to_string()))]
    Parse { line: Option<usize>, message: String },

    #[error("negative entry {value} at row {row}, column {column}")]
    NegativeEntry { row: usize, column: usize, value: i64 },

    #[error("row total is zero (row {row})")]
    ZeroRowTotal { row: usize },

    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },

    #[error("{rows} rows need {rows} or {} columns, got {columns}", rows + 1)]
    ColumnCount { rows: usize, columns: usize },

    #[error("a confusion matrix needs at least 2 classes, got {0}")]
    TooFewClasses(usize),

    #[error("operation requires a 2-class matrix, got {0} classes")]
    NotBinary(usize),

    #[error("class label count {found} does not match class count {expected}")]
    LabelCount { expected: usize, found: usize },

    #[error("empty measure selection")]
    EmptySelection,

    #[error("unknown measure `{0}`")]
    UnknownMeasure(String),

    #[error("{measure} = {value} lies outside [0, 1]")]
    OutOfRange { measure: String, value: f64 },

    #[error("canonical model requires C1 > C2 > d > 0, got C1={large}, C2={small}, d={d}")]
    InvalidCanonical { large: u64, small: u64, d: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no sign change of the cross-over function on ({lo}, {hi})")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("cross-over function changes sign {} times: {roots:?}", roots.len())]
    MultipleCrossings { roots: Vec<f64> },

    #[error("ranking needs at least 2 models, got {0}")]
    TooFewModels(usize),

    #[error("model names ({names}) and values ({values}) differ in length")]
    LengthMismatch { names: usize, values: usize },

    #[error("every value is singular or undefined; nothing to rank")]
    AllSingular,

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("meta order constraint ({0}, {0}) is reflexive")]
    ReflexiveConstraint(String),

    #[error("meta order constraints contain a cycle")]
    CyclicOrder,
}

pub type Result<T> = std::result::Result<T, Error>;
