use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed row at line {line}: {message}")]
    MalformedRow { line: u64, message: String },
    #[error("negative weight at line {line}")]
    NegativeWeight { line: u64 },
    #[error("unknown header column {0:?}")]
    UnknownHeader(String),
    #[error("missing header")]
    MissingHeader,
    #[error("weight matrix is not square: {rows} rows, {cols} columns")]
    NonSquare { rows: usize, cols: usize },
    #[error("non-numeric cell at row {row}, column {col}: {value:?}")]
    NonNumeric {
        row: usize,
        col: usize,
        value: String,
    },
    #[error("negative matrix entry at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize },
    #[error("duplicate node label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("expected {expected} rows, got {actual}")]
    RowCountMismatch { expected: usize, actual: usize },
    /// Layout rows and graph nodes differ. `missing` are graph nodes without
    /// a row, `extra` are rows naming no graph node.
    #[error("{}", layout_mismatch(*.expected, *.actual, .missing, .extra))]
    LayoutMismatch {
        expected: usize,
        actual: usize,
        missing: Vec<String>,
        extra: Vec<String>,
    },
    #[error("non-finite position for node {node} at iteration {iteration}")]
    NonFinitePosition { node: String, iteration: usize },
    #[error("non-finite value in initial positions at row {0}")]
    NonFiniteInput(usize),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("attribute {0:?} is not set on any node")]
    MissingAttribute(String),
    #[error("node {node} has non-numeric value {value:?} for attribute {attribute:?}")]
    NonNumericAttribute {
        node: String,
        attribute: String,
        value: String,
    },
    #[error("invalid color {0:?}, expected #rrggbb")]
    InvalidColor(String),
    #[error("no color assigned to node {0}")]
    MissingColor(String),
    #[error("period {label}: {source}")]
    Period {
        label: String,
        #[source]
        source: Box<Error>,
    },
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<Error>,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn layout_mismatch(expected: usize, actual: usize, missing: &[String], extra: &[String]) -> String {
    let mut msg = if expected == actual {
        "layout rows do not match graph nodes".to_owned()
    } else {
        format!("expected {expected} rows, got {actual}")
    };
    if !missing.is_empty() {
        msg.push_str(&format!("; missing: {}", missing.join(", ")));
    }
    if !extra.is_empty() {
        msg.push_str(&format!("; unexpected: {}", extra.join(", ")));
    }
    msg
}
