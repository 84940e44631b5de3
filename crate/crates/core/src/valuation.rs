//! Symplectic pairing, peripheral valuations and boundary slopes.

use std::fmt;
use std::ops::{Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::degeneration::{DegenerationIndex, DegenerationVector};
use crate::error::{Error, Result};
use crate::gluing::GluingSystem;
use crate::serde_int;

/// `x ∧ y = Σ_k x'_k y''_k - x''_k y'_k` on interleaved vectors.
pub fn wedge<T>(x: &[T], y: &[T]) -> Result<T>
where
    T: Clone + Zero + Mul<Output = T> + Sub<Output = T>,
{
    if x.len() != y.len() || !x.len().is_multiple_of(2) {
        return Err(Error::LengthMismatch {
            expected: x.len() + x.len() % 2,
            actual: y.len(),
        });
    }
    Ok(x.chunks_exact(2)
        .zip(y.chunks_exact(2))
        .fold(T::zero(), |acc, (a, b)| {
            acc + (a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone())
        }))
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `x = (|d'_1| rho_{i_1}, ..., |d'_n| rho_{i_n})` for a certified index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationCovector {
    pub x: Vec<BigInt>,
}

impl DegenerationCovector {
    pub fn new(index: &DegenerationIndex, vector: &DegenerationVector) -> Self {
        Self {
            x: index.covector(&vector.weights()),
        }
    }

    /// Pairing with an integer exponent vector such as `m`, `l` or a row.
    pub fn pair(&self, v: &[i64]) -> Result<BigInt> {
        wedge(&to_big(v), &self.x)
    }
}

/// Boundary slope `p/q` in lowest terms with `q >= 0`; `1/0` when `q = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    pub p: BigInt,
    pub q: BigInt,
}

impl Slope {
    /// Canonical slope of the curve `M^p L^q`; `None` for `(0, 0)`.
    pub fn from_curve(p: BigInt, q: BigInt) -> Option<Slope> {
        if p.is_zero() && q.is_zero() {
            return None;
        }
        if q.is_zero() {
            return Some(Slope {
                p: BigInt::one(),
                q,
            });
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        Some(Slope { p, q })
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Slope, String> {
        let (p, q) = s.split_once('/').ok_or_else(|| format!("slope '{s}' is not p/q"))?;
        let p: BigInt = p.trim().parse().map_err(|e| format!("{e}"))?;
        let q: BigInt = q.trim().parse().map_err(|e| format!("{e}"))?;
        Slope::from_curve(p, q).ok_or_else(|| "0/0 is not a slope".to_string())
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Slope, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Orders of `M`, `L`, their trace functions, and the detected slope at a
/// certified ideal point.
///
/// `vm`, `vl` use the primitive vector `|d'|`; `vm_unreduced`, `vl_unreduced`
/// are the same pairings taken with `|d|` and differ by the factor `gcd(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeRecord {
    #[serde(with = "serde_int::big")]
    pub vm: BigInt,
    #[serde(with = "serde_int::big")]
    pub vl: BigInt,
    #[serde(with = "serde_int::big")]
    pub vim: BigInt,
    #[serde(with = "serde_int::big")]
    pub vil: BigInt,
    #[serde(with = "serde_int::big")]
    pub vm_unreduced: BigInt,
    #[serde(with = "serde_int::big")]
    pub vl_unreduced: BigInt,
    pub slope: Option<Slope>,
    pub detects_character_ideal_point: bool,
}

/// Peripheral valuations at the ideal points of a certified index.
pub fn peripheral_valuations(
    sys: &GluingSystem,
    index: &DegenerationIndex,
    vector: &DegenerationVector,
) -> Result<SlopeRecord> {
    if vector.strict_sign().is_none() {
        return Err(Error::NotCertified {
            index: index.to_string(),
            d: vector.render(),
        });
    }
    if index.len() != sys.n || vector.d.len() != sys.n {
        return Err(Error::LengthMismatch {
            expected: sys.n,
            actual: index.len().max(vector.d.len()),
        });
    }
    let x = DegenerationCovector::new(index, vector);
    let vm = x.pair(&sys.m)?;
    let vl = x.pair(&sys.l)?;
    let vm_unreduced = &vm * &vector.gcd_value;
    let vl_unreduced = &vl * &vector.gcd_value;
    let slope = Slope::from_curve(-vl.clone(), vm.clone());
    Ok(SlopeRecord {
        vim: -vm.abs(),
        vil: -vl.abs(),
        detects_character_ideal_point: slope.is_some(),
        slope,
        vm,
        vl,
        vm_unreduced,
        vl_unreduced,
    })
}
