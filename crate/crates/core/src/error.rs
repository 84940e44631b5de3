use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;

use crate::gluing::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

/// Malformed input text, with optional file and line context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub path: Option<PathBuf>,
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            path: None,
            line: None,
            message: message.into(),
        }
    }

    pub fn at_line(line: usize, message: impl Into<String>) -> Self {
        Self {
            path: None,
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn with_path(mut self, path: impl Into<PathBuf>) -> Self {
        self.path = Some(path.into());
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(path) = &self.path {
            write!(f, "{}:", path.display())?;
        }
        if let Some(line) = self.line {
            write!(f, "{line}:")?;
        }
        if self.path.is_some() || self.line.is_some() {
            write!(f, " ")?;
        }
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("{}", validation_message(.path, .report))]
    Validation {
        path: Option<PathBuf>,
        report: ValidationReport,
    },

    #[error("enumeration of 3^{n} degeneration indices exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: u64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("zero pivot in column {column}: matrix is rank deficient")]
    ZeroPivot { column: usize },

    #[error("degeneration index {index} is not certified (d = {d})")]
    NotCertified { index: String, d: String },

    #[error("equation signs are absent; equations at infinity cannot be solved")]
    MissingSigns,

    #[error("chart {chart} has zero weight")]
    DegenerateChart { chart: usize },

    #[error("orbit count {orbits} differs from gcd {gcd} for index {index}")]
    OrbitCountMismatch {
        index: String,
        orbits: usize,
        gcd: BigInt,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape parameter {tetrahedron} collided with {{0, 1, inf}} at t = {t}")]
    ShapeCollision { tetrahedron: usize, t: f64 },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("report serialization failed: {0}")]
    Serialize(String),
}

fn validation_message(path: &Option<PathBuf>, report: &ValidationReport) -> String {
    let failures = report
        .failures
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ");
    match path {
        Some(p) => format!("{}: validation failed: {failures}", p.display()),
        None => format!("validation failed: {failures}"),
    }
}
