//! Degeneration indices, degeneration matrices and vectors, and the
//! classification of every index of a triangulation.
//!
//! A degeneration index assigns to each tetrahedron the value its shape
//! parameter tends to (`1`, `0` or `inf`). Each symbol comes with a
//! direction in the `(-v(w), v(z))` plane:
//!
//! | symbol | direction |
//! |--------|-----------|
//! | `1`    | `(1, 0)`  |
//! | `0`    | `(0, -1)` |
//! | `inf`  | `(-1, 1)` |
//!
//! The degeneration vector of an index is the vector of signed maximal
//! minors of its degeneration matrix. A strictly one-signed vector
//! certifies ideal points; a weakly one-signed one (or a zero vector with a
//! nontrivial cone) only marks a candidate.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gluing::ReducedSystem;
use crate::linalg::{gcd_all, IntMatrix, Sign};
use crate::serde_int;

/// Limiting value of one shape parameter. The variant order `1 < 0 < inf`
/// is the canonical enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    One,
    Zero,
    Inf,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::One, Symbol::Zero, Symbol::Inf];

    /// Direction of `(-v(w), v(z))` for this degeneration.
    pub fn direction(self) -> (i64, i64) {
        match self {
            Symbol::One => (1, 0),
            Symbol::Zero => (0, -1),
            Symbol::Inf => (-1, 1),
        }
    }

    /// Degeneration-matrix entry for the exponent pair `(r', r'')`.
    pub fn select(self, r1: i64, r2: i64) -> i64 {
        match self {
            Symbol::One => r2,
            Symbol::Zero => r1,
            Symbol::Inf => -r1 - r2,
        }
    }

    fn literal(self) -> &'static str {
        match self {
            Symbol::One => "1",
            Symbol::Zero => "0",
            Symbol::Inf => "inf",
        }
    }

    fn glyph(self) -> &'static str {
        match self {
            Symbol::One => "1",
            Symbol::Zero => "0",
            Symbol::Inf => "∞",
        }
    }
}

impl FromStr for Symbol {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Symbol, String> {
        match s.trim() {
            "1" => Ok(Symbol::One),
            "0" => Ok(Symbol::Zero),
            "inf" | "Inf" | "INF" | "∞" | "oo" | "i" => Ok(Symbol::Inf),
            other => Err(format!("'{other}' is not one of 1, 0, inf")),
        }
    }
}

/// An element of `{1, 0, inf}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegenerationIndex(pub Vec<Symbol>);

impl DegenerationIndex {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// The `ordinal`-th index of length `n` in canonical order.
    pub fn from_ordinal(mut ordinal: u64, n: usize) -> DegenerationIndex {
        let mut symbols = vec![Symbol::One; n];
        for slot in symbols.iter_mut().rev() {
            *slot = Symbol::ALL[(ordinal % 3) as usize];
            ordinal /= 3;
        }
        DegenerationIndex(symbols)
    }

    /// Interleaved `2n`-vector `(t_1 rho_{i_1}, ..., t_n rho_{i_n})`.
    pub fn covector(&self, t: &[BigInt]) -> Vec<BigInt> {
        self.0
            .iter()
            .zip(t)
            .flat_map(|(s, t)| {
                let (a, b) = s.direction();
                [t * a, t * b]
            })
            .collect()
    }

    /// `(1,0,∞)` rendering for human-facing output.
    pub fn pretty(&self) -> String {
        format!("({})", self.0.iter().map(|s| s.glyph()).join(","))
    }
}

impl fmt::Display for DegenerationIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().map(|s| s.literal()).join(","))
    }
}

impl FromStr for DegenerationIndex {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Err("empty degeneration index".into());
        }
        body.split(',')
            .map(str::parse)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(DegenerationIndex)
    }
}

impl Serialize for DegenerationIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for DegenerationIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Signed maximal minors of a degeneration matrix, with gcd and primitive
/// part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegenerationVector {
    #[serde(with = "serde_int::big_vec")]
    pub d: Vec<BigInt>,
    #[serde(rename = "gcd", with = "serde_int::big")]
    pub gcd_value: BigInt,
    #[serde(rename = "d_primitive", with = "serde_int::big_vec")]
    pub d_primitive: Vec<BigInt>,
}

impl DegenerationVector {
    pub fn new(d: Vec<BigInt>) -> Self {
        let gcd_value = gcd_all(&d);
        let d_primitive = if gcd_value.is_zero() {
            d.clone()
        } else {
            d.iter().map(|x| x / &gcd_value).collect()
        };
        Self {
            d,
            gcd_value,
            d_primitive,
        }
    }

    pub fn from_i64(d: &[i64]) -> Self {
        Self::new(d.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.gcd_value.is_zero()
    }

    /// `Some(sign)` when every entry is nonzero with that sign.
    pub fn strict_sign(&self) -> Option<Sign> {
        if self.d.iter().all(Signed::is_positive) {
            Some(Sign::Plus)
        } else if self.d.iter().all(Signed::is_negative) {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    /// True when `d >= 0` or `d <= 0`.
    pub fn is_weakly_one_signed(&self) -> bool {
        self.d.iter().all(|x| !x.is_negative()) || self.d.iter().all(|x| !x.is_positive())
    }

    /// `|d'|`, the componentwise absolute primitive vector.
    pub fn weights(&self) -> Vec<BigInt> {
        self.d_primitive.iter().map(Signed::abs).collect()
    }

    pub fn render(&self) -> String {
        format!("({})", self.d.iter().join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "lowercase")]
pub enum IndexClassification {
    Certified { orientation: Sign },
    Candidate,
    Rejected,
}

impl IndexClassification {
    pub fn is_certified(&self) -> bool {
        matches!(self, IndexClassification::Certified { .. })
    }
}

impl fmt::Display for IndexClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexClassification::Certified { orientation } => write!(f, "certified({orientation})"),
            IndexClassification::Candidate => write!(f, "candidate"),
            IndexClassification::Rejected => write!(f, "rejected"),
        }
    }
}

/// A generator of the cone `H(I) ∩ [R]^⊥`, as nonnegative coefficients of
/// the symbol directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeGenerator {
    #[serde(with = "serde_int::big_vec")]
    pub coefficients: Vec<BigInt>,
    pub face_mask: Vec<u8>,
}

/// Raw minor vector of one face `R(I)(eps)`, indexed by the kept columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceVector {
    pub mask: Vec<u8>,
    #[serde(with = "serde_int::big_vec")]
    pub minors: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeAnalysis {
    pub rank: usize,
    pub faces: Vec<FaceVector>,
    pub generators: Vec<ConeGenerator>,
}

fn check_len(sys: &ReducedSystem, index: &DegenerationIndex) -> Result<()> {
    if index.len() != sys.n() {
        return Err(Error::LengthMismatch {
            expected: sys.n(),
            actual: index.len(),
        });
    }
    Ok(())
}

/// The `(n-1) x n` degeneration matrix of `index`.
pub fn degeneration_matrix(sys: &ReducedSystem, index: &DegenerationIndex) -> Result<IntMatrix> {
    check_len(sys, index)?;
    let rows: Vec<Vec<i64>> = sys
        .active_rows
        .iter()
        .map(|row| {
            index
                .symbols()
                .iter()
                .enumerate()
                .map(|(k, s)| s.select(row[2 * k], row[2 * k + 1]))
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows, sys.n())
}

pub fn degeneration_vector(sys: &ReducedSystem, index: &DegenerationIndex) -> Result<DegenerationVector> {
    let m = degeneration_matrix(sys, index)?;
    if m.ncols() != m.nrows() + 1 {
        return Err(Error::Shape(format!(
            "degeneration matrix is {}x{}; the system must have exactly n-1 active rows",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(DegenerationVector::new(m.maximal_minor_vector()?))
}

fn classify_with(
    sys: &ReducedSystem,
    index: &DegenerationIndex,
    vector: &DegenerationVector,
) -> Result<IndexClassification> {
    if let Some(orientation) = vector.strict_sign() {
        return Ok(IndexClassification::Certified { orientation });
    }
    if vector.is_zero() {
        let cone = cone_generators(sys, index)?;
        return Ok(if cone.is_empty() {
            IndexClassification::Rejected
        } else {
            IndexClassification::Candidate
        });
    }
    Ok(if vector.is_weakly_one_signed() {
        IndexClassification::Candidate
    } else {
        IndexClassification::Rejected
    })
}

pub fn classify_index(sys: &ReducedSystem, index: &DegenerationIndex) -> Result<IndexClassification> {
    let vector = degeneration_vector(sys, index)?;
    classify_with(sys, index, &vector)
}

/// Face structure and generators of `H(I) ∩ [R]^⊥`.
///
/// With `r = rank R(I)`, every face spanned by `r + 1` tetrahedra is tested:
/// the signed maximal minors of the corresponding `r x (r+1)` block of a
/// row basis span that face's kernel, and a one-signed nonzero result is a
/// generator. Faces are visited in lexicographic order of their zero
/// positions; parallel generators are reported once.
pub fn cone_analysis(sys: &ReducedSystem, index: &DegenerationIndex) -> Result<ConeAnalysis> {
    let matrix = degeneration_matrix(sys, index)?;
    let n = sys.n();
    let rank = matrix.rank();
    let basis = matrix.row_basis();
    let masked = n - 1 - rank.min(n - 1);

    let mut faces = Vec::new();
    let mut generators: Vec<ConeGenerator> = Vec::new();
    for zero_positions in (0..n).combinations(masked) {
        let kept: Vec<usize> = (0..n).filter(|c| !zero_positions.contains(c)).collect();
        let mask: Vec<u8> = (0..n).map(|c| u8::from(!zero_positions.contains(&c))).collect();
        let minors = basis.select_columns(&kept).maximal_minor_vector()?;

        let nonzero = || minors.iter().filter(|x| !x.is_zero());
        let one_signed = nonzero().next().is_some()
            && (nonzero().all(Signed::is_positive) || nonzero().all(Signed::is_negative));
        if one_signed {
            let mut coefficients = vec![BigInt::zero(); n];
            for (&c, v) in kept.iter().zip(&minors) {
                coefficients[c] = v.abs();
            }
            let g = gcd_all(&coefficients);
            coefficients.iter_mut().for_each(|x| *x /= &g);
            if !generators.iter().any(|e| e.coefficients == coefficients) {
                generators.push(ConeGenerator {
                    coefficients,
                    face_mask: mask.clone(),
                });
            }
        }
        faces.push(FaceVector { mask, minors });
    }
    Ok(ConeAnalysis {
        rank,
        faces,
        generators,
    })
}

pub fn cone_generators(sys: &ReducedSystem, index: &DegenerationIndex) -> Result<Vec<ConeGenerator>> {
    Ok(cone_analysis(sys, index)?.generators)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub max_indices: u64,
}

impl ScanConfig {
    pub const DEFAULT_MAX_INDICES: u64 = 43_046_721; // 3^16
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            max_indices: Self::DEFAULT_MAX_INDICES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanEntry {
    pub index: DegenerationIndex,
    pub vector: DegenerationVector,
    pub classification: IndexClassification,
}

/// Certified and candidate indices in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexScan {
    pub certified: Vec<ScanEntry>,
    pub candidates: Vec<ScanEntry>,
}

/// Number of indices for `n` tetrahedra, or `None` past `u64`.
fn index_count(n: usize) -> Option<u64> {
    3u64.checked_pow(u32::try_from(n).ok()?)
}

/// Classifies every index of `{1, 0, inf}^n`, in canonical order.
pub fn classify_all(sys: &ReducedSystem, config: &ScanConfig) -> Result<Vec<ScanEntry>> {
    let n = sys.n();
    let total = index_count(n)
        .filter(|&t| t <= config.max_indices)
        .ok_or(Error::CapExceeded {
            n,
            cap: config.max_indices,
        })?;
    let mut entries = (0..total)
        .into_par_iter()
        .map(|ordinal| {
            let index = DegenerationIndex::from_ordinal(ordinal, n);
            let vector = degeneration_vector(sys, &index)?;
            let classification = classify_with(sys, &index, &vector)?;
            Ok(ScanEntry {
                index,
                vector,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by(|a, b| a.index.cmp(&b.index));
    Ok(entries)
}

pub fn scan(sys: &ReducedSystem, config: &ScanConfig) -> Result<IndexScan> {
    let mut out = IndexScan::default();
    for entry in classify_all(sys, config)? {
        match entry.classification {
            IndexClassification::Certified { .. } => out.certified.push(entry),
            IndexClassification::Candidate => out.candidates.push(entry),
            IndexClassification::Rejected => {}
        }
    }
    Ok(out)
}
