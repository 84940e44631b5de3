//! Ideal points of deformation varieties from ideal-triangulation data.
//!
//! The input is the integer exponent data of the gluing equations of an
//! ideal triangulation of a one-cusped 3-manifold, together with the
//! exponent vectors of the meridian and longitude. From that data the
//! crate
//!
//! - enumerates degeneration indices and their degeneration vectors
//!   (signed maximal minors of the degeneration matrix),
//! - certifies ideal points when a degeneration vector is strictly
//!   one-signed and counts them by the gcd of its entries,
//! - solves the monomial equations at infinity exactly over roots of
//!   unity and quotients by the weighted cyclic action,
//! - computes peripheral valuations and the boundary slope detected at
//!   each certified ideal point,
//! - traces the corresponding branch of the deformation variety
//!   numerically near the ideal point.
//!
//! Everything except branch tracing is exact integer / rational
//! arithmetic.

pub mod degeneration;
pub mod error;
pub mod gluing;
pub mod infinity;
pub mod linalg;
pub mod report;
mod serde_int;
pub mod valuation;

pub use degeneration::{
    classify_all, classify_index, cone_analysis, cone_generators, degeneration_matrix, degeneration_vector,
    scan, ConeAnalysis, ConeGenerator, DegenerationIndex, DegenerationVector, IndexClassification,
    IndexScan, ScanConfig, ScanEntry, Symbol,
};
pub use error::{Error, ParseError, Result};
pub use gluing::{
    parse_gluing_system, reduce, validate, GluingSystem, InputFormat, ReducedSystem,
    ValidationReport, Violation,
};
pub use infinity::{
    equations_at_infinity, equations_at_infinity_in_chart, quotient_by_weight_action,
    solve_at_infinity, trace_branch, Angle, BranchTrace, MonomialSystem, TraceOptions,
    UnitRootVector,
};
pub use linalg::{IntMatrix, Sign, SignedTriangularSystem};
pub use report::{
    emit_report, load_system, load_validated, run_pipeline, run_system, CandidateRecord, ConfigEcho,
    IdealPointRecord, InfinityRecord, Options, ReportFormat, ScanReport,
};
pub use valuation::{peripheral_valuations, wedge, DegenerationCovector, Slope, SlopeRecord};
