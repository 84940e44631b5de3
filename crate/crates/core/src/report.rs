//! Pipeline orchestration and report emission.
//!
//! `run_pipeline` goes parse → validate → reduce → scan, then for each
//! certified index computes valuations, solves the equations at infinity,
//! quotients by the weighted action and optionally traces each branch.
//! Candidates get their cone generators. Reports are deterministic: the
//! same input and options always give byte-identical JSON.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::degeneration::{
    cone_generators, scan, ConeGenerator, DegenerationIndex, DegenerationVector, ScanConfig,
};
use crate::error::{Error, Result};
use crate::gluing::{parse_gluing_system, reduce, validate, GluingSystem, InputFormat, ReducedSystem};
use crate::infinity::{
    equations_at_infinity, quotient_by_weight_action, solve_at_infinity, trace_branch, BranchTrace,
    TraceOptions, UnitRootVector,
};
use crate::linalg::Sign;
use crate::serde_int;
use crate::valuation::{peripheral_valuations, SlopeRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct Options {
    pub max_indices: u64,
    /// Solve the equations at infinity for certified indices.
    pub solve: bool,
    /// Trace every orbit representative at this `t`.
    pub trace_t: Option<f64>,
    /// Overrides detection by file extension.
    pub input_format: Option<InputFormat>,
    pub trace: TraceOptions,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_indices: ScanConfig::DEFAULT_MAX_INDICES,
            solve: true,
            trace_t: None,
            input_format: None,
            trace: TraceOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub max_indices: u64,
    pub solve: bool,
    pub trace_t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfinityRecord {
    /// 1-based position of the coordinate set to 1.
    pub chart: usize,
    #[serde(with = "serde_int::big_mat")]
    pub exponents: Vec<Vec<BigInt>>,
    pub targets: Vec<Sign>,
    pub solutions: Vec<UnitRootVector>,
    pub orbit_representatives: Vec<UnitRootVector>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdealPointRecord {
    pub index: DegenerationIndex,
    #[serde(flatten)]
    pub vector: DegenerationVector,
    pub orientation: Sign,
    /// Number of ideal points, `gcd(d)`.
    #[serde(with = "serde_int::big")]
    pub count: BigInt,
    pub valuation: SlopeRecord,
    pub infinity: Option<InfinityRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub traces: Vec<BranchTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub index: DegenerationIndex,
    #[serde(flatten)]
    pub vector: DegenerationVector,
    pub generators: Vec<ConeGenerator>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub system: String,
    pub n: usize,
    pub config: ConfigEcho,
    pub certified: Vec<IdealPointRecord>,
    pub candidates: Vec<CandidateRecord>,
}

impl ScanReport {
    pub fn empty(system: impl Into<String>, n: usize) -> Self {
        Self {
            system: system.into(),
            n,
            config: ConfigEcho {
                max_indices: ScanConfig::DEFAULT_MAX_INDICES,
                solve: false,
                trace_t: None,
            },
            certified: Vec::new(),
            candidates: Vec::new(),
        }
    }

    /// Parses the JSON produced by [`emit_report`].
    pub fn from_json(text: &str) -> Result<ScanReport> {
        serde_json::from_str(text).map_err(|e| Error::Serialize(e.to_string()))
    }
}

fn certified_record(
    sys: &ReducedSystem,
    index: DegenerationIndex,
    vector: DegenerationVector,
    orientation: Sign,
    options: &Options,
) -> Result<IdealPointRecord> {
    let valuation = peripheral_valuations(&sys.base, &index, &vector)?;
    let mut infinity = None;
    let mut traces = Vec::new();
    if options.solve && sys.active_signs.is_some() {
        let msys = equations_at_infinity(sys, &index, &vector)?;
        let solutions = solve_at_infinity(&msys)?;
        let reps = quotient_by_weight_action(&solutions, &msys)?;
        if let Some(t) = options.trace_t {
            for a in &reps {
                traces.push(trace_branch(sys, &msys, a, t, &options.trace)?);
            }
        }
        infinity = Some(InfinityRecord {
            chart: msys.chart + 1,
            exponents: msys.exponents.to_rows(),
            targets: msys.targets.clone(),
            solutions,
            orbit_representatives: reps,
        });
    }
    Ok(IdealPointRecord {
        count: vector.gcd_value.clone(),
        index,
        vector,
        orientation,
        valuation,
        infinity,
        traces,
    })
}

/// Runs the full pipeline on an in-memory system.
pub fn run_system(sys: &GluingSystem, options: &Options) -> Result<ScanReport> {
    let report = validate(sys);
    if !report.is_ok() {
        return Err(Error::Validation { path: None, report });
    }
    let reduced = reduce(sys);
    let index_scan = scan(
        &reduced,
        &ScanConfig {
            max_indices: options.max_indices,
        },
    )?;

    let certified = index_scan
        .certified
        .into_iter()
        .map(|entry| {
            let orientation = entry.vector.strict_sign().expect("certified entries are one-signed");
            certified_record(&reduced, entry.index, entry.vector, orientation, options)
        })
        .collect::<Result<Vec<_>>>()?;
    let candidates = index_scan
        .candidates
        .into_iter()
        .map(|entry| {
            Ok(CandidateRecord {
                generators: cone_generators(&reduced, &entry.index)?,
                index: entry.index,
                vector: entry.vector,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ScanReport {
        system: sys.name.clone(),
        n: sys.n,
        config: ConfigEcho {
            max_indices: options.max_indices,
            solve: options.solve,
            trace_t: options.trace_t,
        },
        certified,
        candidates,
    })
}

/// Reads and parses a gluing-system file.
pub fn load_system(path: &Path, format: Option<InputFormat>) -> Result<GluingSystem> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let format = format.unwrap_or_else(|| InputFormat::from_path(path));
    parse_gluing_system(&text, format).map_err(|e| Error::Parse(e.with_path(path)))
}

/// Loads and validates a system, returning it with its validation warnings.
pub fn load_validated(path: &Path, format: Option<InputFormat>) -> Result<(GluingSystem, Vec<String>)> {
    let sys = load_system(path, format)?;
    let report = validate(&sys);
    if !report.is_ok() {
        return Err(Error::Validation {
            path: Some(path.to_path_buf()),
            report,
        });
    }
    Ok((sys, report.warnings))
}

/// Loads, validates and analyzes the system stored at `path`.
pub fn run_pipeline(path: &Path, options: &Options) -> Result<ScanReport> {
    let (sys, _) = load_validated(path, options.input_format)?;
    run_system(&sys, options)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown report format '{other}'")),
        }
    }
}

fn slope_text(rec: &SlopeRecord) -> String {
    rec.slope.as_ref().map_or_else(|| "-".to_string(), |s| s.to_string())
}

fn list<T: std::fmt::Display>(v: &[T]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", inner.join(","))
}

fn emit_csv(report: &ScanReport) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["index", "d", "gcd", "vM", "vL", "slope"])
        .expect("in-memory write");
    for rec in &report.certified {
        writer
            .write_record([
                rec.index.to_string(),
                list(&rec.vector.d),
                rec.count.to_string(),
                rec.valuation.vm.to_string(),
                rec.valuation.vl.to_string(),
                slope_text(&rec.valuation),
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
}

fn emit_markdown(report: &ScanReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {} (n = {})\n", report.system, report.n);
    let _ = writeln!(out, "## Certified ideal points\n");
    let _ = writeln!(out, "| index | d(I) | count | (v(M), v(L)) | slope | solutions at infinity |");
    let _ = writeln!(out, "|---|---|---|---|---|---|");
    for rec in &report.certified {
        let solutions = match &rec.infinity {
            Some(inf) => format!(
                "chart a_{} = 1: {}",
                inf.chart,
                inf.solutions.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
            ),
            None => "-".to_string(),
        };
        let _ = writeln!(
            out,
            "| {} | {} | {} | ({}, {}) | {} | {} |",
            rec.index.pretty(),
            list(&rec.vector.d),
            rec.count,
            rec.valuation.vm,
            rec.valuation.vl,
            slope_text(&rec.valuation),
            solutions
        );
    }
    let _ = writeln!(out, "\n## Candidates\n");
    let _ = writeln!(out, "| index | d(I) | cone generators |");
    let _ = writeln!(out, "|---|---|---|");
    for rec in &report.candidates {
        let gens = rec
            .generators
            .iter()
            .map(|g| list(&g.coefficients))
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(out, "| {} | {} | {} |", rec.index.pretty(), list(&rec.vector.d), gens);
    }
    out
}

/// Renders a report; output is byte-stable for a fixed report.
pub fn emit_report(report: &ScanReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Csv => emit_csv(report),
        ReportFormat::Markdown => emit_markdown(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> GluingSystem {
        let text = match name {
            "m006" => include_str!("../../../fixtures/m006.json"),
            _ => include_str!("../../../fixtures/m009.json"),
        };
        parse_gluing_system(text, InputFormat::Json).unwrap()
    }

    #[test]
    fn m006_csv_rows() {
        let report = run_system(&fixture("m006"), &Options::default()).unwrap();
        let csv = emit_report(&report, ReportFormat::Csv);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "index,d,gcd,vM,vL,slope");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1], "\"1,1,inf\",\"(1,3,1)\",1,-1,-3,-3/1");
    }

    #[test]
    fn empty_report_has_headers_only() {
        let report = ScanReport::empty("none", 0);
        assert_eq!(emit_report(&report, ReportFormat::Csv), "index,d,gcd,vM,vL,slope\n");
        let md = emit_report(&report, ReportFormat::Markdown);
        assert!(md.contains("| index | d(I) | count |"));
    }

    #[test]
    fn m009_json_round_trip() {
        let options = Options {
            trace_t: Some(1e-3),
            ..Options::default()
        };
        let report = run_system(&fixture("m009"), &options).unwrap();
        let json = emit_report(&report, ReportFormat::Json);
        let back = ScanReport::from_json(&json).unwrap();
        assert_eq!(back, report);
        assert_eq!(emit_report(&back, ReportFormat::Json), json);
    }

    #[test]
    fn count_only_mode_without_signs() {
        let mut sys = fixture("m009");
        sys.signs = None;
        let report = run_system(&sys, &Options::default()).unwrap();
        assert_eq!(report.certified.len(), 2);
        assert!(report.certified.iter().all(|r| r.infinity.is_none()));
        assert!(report.certified.iter().all(|r| r.count == BigInt::from(2)));
    }

    #[test]
    fn invalid_system_is_refused() {
        let mut sys = fixture("m006");
        sys.rows[0][0] += 1;
        assert!(matches!(run_system(&sys, &Options::default()), Err(Error::Validation { .. })));
    }

    #[test]
    fn markdown_mentions_every_index() {
        let report = run_system(&fixture("m006"), &Options::default()).unwrap();
        let md = emit_report(&report, ReportFormat::Markdown);
        for idx in ["(1,1,∞)", "(1,∞,1)", "(0,0,∞)", "(0,∞,0)", "(∞,0,0)"] {
            assert!(md.contains(idx), "{idx} missing");
        }
    }
}
