//! Gluing-equation data: exponent rows, equation signs and peripheral
//! curves, with the JSON and line-oriented text formats used to read them.
//!
//! All exponent vectors use the interleaved layout
//! `(x'_1, x''_1, ..., x'_n, x''_n)`, where the primed entry is the
//! exponent of `z_k` and the double-primed entry that of `w_k = 1 - z_k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::linalg::Sign;
use crate::valuation::wedge;

/// Gluing equations `prod_k z_k^{r'_ik} w_k^{r''_ik} = sign_i` of an ideal
/// triangulation with `n` tetrahedra, plus meridian and longitude exponents.
///
/// `rows` normally holds all `n` edge equations. Inputs that already dropped
/// the dependent last equation (`n - 1` rows) are accepted as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingSystem {
    pub name: String,
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<Sign>>,
    pub m: Vec<i64>,
    pub l: Vec<i64>,
}

impl GluingSystem {
    /// True when the input omitted the dependent last equation, either by
    /// supplying `n - 1` rows or by making row `n` identically zero.
    pub fn omits_last_row(&self) -> bool {
        self.rows.len() + 1 == self.n
            || (self.n > 1
                && self.rows.len() == self.n
                && self.rows[self.n - 1].iter().all(|&x| x == 0))
    }

    /// Canonical JSON text.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("gluing system serializes")
    }

    /// Line-oriented text form understood by [`parse_gluing_system`].
    pub fn to_snap_text(&self) -> String {
        let join = |v: &[i64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = format!("name: {}\n", self.name);
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&join(row));
            if let Some(signs) = &self.signs {
                out.push_str(&format!(" {}", signs[i]));
            }
            out.push('\n');
        }
        out.push_str(&format!("m: {}\n", join(&self.m)));
        out.push_str(&format!("l: {}\n", join(&self.l)));
        out
    }
}

/// Gluing system with the dependent last equation dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedSystem {
    pub base: GluingSystem,
    pub active_rows: Vec<Vec<i64>>,
    pub active_signs: Option<Vec<Sign>>,
}

impl ReducedSystem {
    pub fn n(&self) -> usize {
        self.base.n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    SnapText,
}

impl InputFormat {
    /// `.json` files are JSON, anything else is line-oriented text.
    pub fn from_path(path: &std::path::Path) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
            _ => InputFormat::SnapText,
        }
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(InputFormat::Json),
            "snap" | "snap-text" | "text" => Ok(InputFormat::SnapText),
            other => Err(format!("unknown input format '{other}'")),
        }
    }
}

/// Parses gluing data. Only representation is checked here; the algebraic
/// invariants are the job of [`validate`].
pub fn parse_gluing_system(input: &str, format: InputFormat) -> std::result::Result<GluingSystem, ParseError> {
    if input.trim().is_empty() {
        return Err(ParseError::new("empty input"));
    }
    let sys = match format {
        InputFormat::Json => parse_json(input)?,
        InputFormat::SnapText => parse_snap_text(input)?,
    };
    check_shape(&sys)?;
    Ok(sys)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJson {
    name: String,
    n: usize,
    rows: Vec<Vec<i64>>,
    #[serde(default)]
    signs: Option<Vec<i64>>,
    m: Vec<i64>,
    l: Vec<i64>,
}

fn parse_json(input: &str) -> std::result::Result<GluingSystem, ParseError> {
    let raw: RawJson = serde_json::from_str(input).map_err(|e| {
        let line = e.line();
        let msg = e.to_string();
        if line > 0 {
            ParseError::at_line(line, msg)
        } else {
            ParseError::new(msg)
        }
    })?;
    let signs = raw
        .signs
        .map(|s| {
            s.into_iter()
                .enumerate()
                .map(|(i, v)| {
                    Sign::from_i64(v)
                        .ok_or_else(|| ParseError::new(format!("sign of equation {} is {v}, not 1 or -1", i + 1)))
                })
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .transpose()?;
    Ok(GluingSystem {
        name: raw.name,
        n: raw.n,
        rows: raw.rows,
        signs,
        m: raw.m,
        l: raw.l,
    })
}

fn parse_ints(line_no: usize, text: &str) -> std::result::Result<Vec<i64>, ParseError> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| ParseError::at_line(line_no, format!("'{tok}' is not an integer exponent")))
        })
        .collect()
}

fn parse_snap_text(input: &str) -> std::result::Result<GluingSystem, ParseError> {
    let mut name = None;
    let mut m = None;
    let mut l = None;
    let mut equations: Vec<(usize, Vec<i64>)> = Vec::new();

    for (idx, raw_line) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("m:") {
            if m.is_some() {
                return Err(ParseError::at_line(line_no, "duplicate m: line"));
            }
            m = Some((line_no, parse_ints(line_no, rest)?));
        } else if let Some(rest) = line.strip_prefix("l:") {
            if l.is_some() {
                return Err(ParseError::at_line(line_no, "duplicate l: line"));
            }
            l = Some((line_no, parse_ints(line_no, rest)?));
        } else {
            equations.push((line_no, parse_ints(line_no, line)?));
        }
    }

    let (m_line, m) = m.ok_or_else(|| ParseError::new("missing m: line"))?;
    let (_, l) = l.ok_or_else(|| ParseError::new("missing l: line"))?;
    if m.is_empty() || m.len() % 2 != 0 {
        return Err(ParseError::at_line(
            m_line,
            format!("m has {} entries; expected an even, positive count", m.len()),
        ));
    }
    let n = m.len() / 2;

    let mut rows = Vec::with_capacity(equations.len());
    let mut signs = Vec::with_capacity(equations.len());
    for (line_no, mut ints) in equations {
        if ints.len() == 2 * n + 1 {
            let s = ints.pop().expect("nonempty");
            let sign = Sign::from_i64(s)
                .ok_or_else(|| ParseError::at_line(line_no, format!("sign {s} is not 1 or -1")))?;
            signs.push(Some(sign));
        } else if ints.len() == 2 * n {
            signs.push(None);
        } else {
            return Err(ParseError::at_line(
                line_no,
                format!("equation has {} entries; expected {} (or {} with a sign)", ints.len(), 2 * n, 2 * n + 1),
            ));
        }
        rows.push(ints);
    }
    let signs = if signs.iter().all(Option::is_some) && !signs.is_empty() {
        Some(signs.into_iter().map(|s| s.expect("checked")).collect())
    } else if signs.iter().all(Option::is_none) {
        None
    } else {
        return Err(ParseError::new("either every equation carries a sign or none does"));
    };

    Ok(GluingSystem {
        name: name.unwrap_or_else(|| "unnamed".to_string()),
        n,
        rows,
        signs,
        m,
        l,
    })
}

fn check_shape(sys: &GluingSystem) -> std::result::Result<(), ParseError> {
    let n = sys.n;
    if n == 0 {
        return Err(ParseError::new("n must be positive"));
    }
    if sys.rows.len() != n && sys.rows.len() + 1 != n {
        return Err(ParseError::new(format!(
            "expected {n} equation rows (or {}), got {}",
            n - 1,
            sys.rows.len()
        )));
    }
    for (i, row) in sys.rows.iter().enumerate() {
        if row.len() != 2 * n {
            return Err(ParseError::new(format!(
                "row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                2 * n
            )));
        }
    }
    if let Some(signs) = &sys.signs {
        if signs.len() != sys.rows.len() {
            return Err(ParseError::new(format!(
                "{} signs for {} equations",
                signs.len(),
                sys.rows.len()
            )));
        }
    }
    for (label, v) in [("m", &sys.m), ("l", &sys.l)] {
        if v.len() != 2 * n {
            return Err(ParseError::new(format!(
                "{label} has {} entries, expected {}",
                v.len(),
                2 * n
            )));
        }
    }
    Ok(())
}

/// A violated invariant of a [`GluingSystem`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroTetrahedra,
    RowCount { expected: usize, actual: usize },
    RowLength { row: usize, expected: usize, actual: usize },
    PeripheralLength { curve: &'static str, expected: usize, actual: usize },
    SignCount { expected: usize, actual: usize },
    RowSumNonzero { component: usize, value: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroTetrahedra => write!(f, "n must be positive"),
            Violation::RowCount { expected, actual } => {
                write!(f, "expected {expected} rows, got {actual}")
            }
            Violation::RowLength { row, expected, actual } => {
                write!(f, "row {row} has length {actual}, expected {expected}")
            }
            Violation::PeripheralLength { curve, expected, actual } => {
                write!(f, "{curve} has length {actual}, expected {expected}")
            }
            Violation::SignCount { expected, actual } => {
                write!(f, "expected {expected} signs, got {actual}")
            }
            Violation::RowSumNonzero { component, value } => {
                write!(f, "row sum nonzero: component {component} sums to {value}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every structural invariant and reports all violations at once.
pub fn validate(sys: &GluingSystem) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = sys.n;
    if n == 0 {
        report.failures.push(Violation::ZeroTetrahedra);
        return report;
    }
    let width = 2 * n;

    if sys.rows.len() != n && sys.rows.len() + 1 != n {
        report.failures.push(Violation::RowCount {
            expected: n,
            actual: sys.rows.len(),
        });
    }
    let mut shapes_ok = true;
    for (i, row) in sys.rows.iter().enumerate() {
        if row.len() != width {
            shapes_ok = false;
            report.failures.push(Violation::RowLength {
                row: i + 1,
                expected: width,
                actual: row.len(),
            });
        }
    }
    for (curve, v) in [("m", &sys.m), ("l", &sys.l)] {
        if v.len() != width {
            report.failures.push(Violation::PeripheralLength {
                curve,
                expected: width,
                actual: v.len(),
            });
        }
    }
    if let Some(signs) = &sys.signs {
        if signs.len() != sys.rows.len() {
            report.failures.push(Violation::SignCount {
                expected: sys.rows.len(),
                actual: signs.len(),
            });
        }
    }
    if !shapes_ok {
        return report;
    }

    if sys.rows.len() == n && !sys.omits_last_row() {
        for c in 0..width {
            let total: i64 = sys.rows.iter().map(|r| r[c]).sum();
            if total != 0 {
                report.failures.push(Violation::RowSumNonzero {
                    component: c + 1,
                    value: total,
                });
            }
        }
        if let Some(signs) = &sys.signs {
            if signs.len() == n && signs.iter().fold(Sign::Plus, |a, &b| a * b) == Sign::Minus {
                report
                    .warnings
                    .push("equation signs multiply to -1, so the equations have no common solution".into());
            }
        }
    } else if sys.rows.len() == n {
        report.warnings.push(format!("row {n} is zero"));
    } else {
        report
            .warnings
            .push(format!("only {} rows supplied; zero-sum check skipped", sys.rows.len()));
    }

    let active = sys.rows.len().min(n.saturating_sub(1));
    for (i, row) in sys.rows.iter().take(active).enumerate() {
        match wedge(row, row) {
            Ok(0) => {}
            _ => report.warnings.push(format!("row {} does not pair to zero with itself", i + 1)),
        }
    }
    report
}

/// Drops the dependent last equation.
pub fn reduce(sys: &GluingSystem) -> ReducedSystem {
    let keep = sys.rows.len().min(sys.n.saturating_sub(1));
    ReducedSystem {
        base: sys.clone(),
        active_rows: sys.rows[..keep].to_vec(),
        active_signs: sys.signs.as_ref().map(|s| s[..keep].to_vec()),
    }
}
