//! Fixture loading and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use ideal_points::{
    degeneration_vector, parse_gluing_system, reduce, scan, DegenerationIndex, GluingSystem,
    InputFormat, MonomialSystem, ReducedSystem, ScanConfig,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> GluingSystem {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_gluing_system(&text, InputFormat::Json).unwrap()
}

pub fn reduced(name: &str) -> ReducedSystem {
    reduce(&fixture(name))
}

pub fn all_indices(n: usize) -> Vec<DegenerationIndex> {
    (0..3u64.pow(n as u32))
        .map(|k| DegenerationIndex::from_ordinal(k, n))
        .collect()
}

/// Certified indices and their degeneration vectors.
pub fn certified(name: &str) -> Vec<(DegenerationIndex, ideal_points::DegenerationVector)> {
    let sys = reduced(name);
    scan(&sys, &ScanConfig::default())
        .unwrap()
        .certified
        .into_iter()
        .map(|e| (e.index, e.vector))
        .collect()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Determinant by Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
            .collect();
        let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// `(-1)^j det(M without column j)` by cofactor expansion.
pub fn minor_vector_oracle(m: &[Vec<i64>]) -> Vec<BigInt> {
    let cols = m.len() + 1;
    (0..cols)
        .map(|j| {
            let sub: Vec<Vec<i64>> = m
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let d = cofactor_det(&sub);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Rank as the largest size of a nonzero square minor.
pub fn brute_force_rank(m: &[Vec<i64>]) -> usize {
    use itertools::Itertools;
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in (0..rows).combinations(k) {
            for cs in (0..cols).combinations(k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                if !cofactor_det(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

pub fn to_i64_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<i64>> {
    use num_traits::ToPrimitive;
    rows.iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect()
}

/// Every solution of the chart system as exact angle vectors, found by
/// enumerating all `N`-th roots of unity with `N = 2 |det|`.
pub fn brute_force_solutions(msys: &MonomialSystem) -> BTreeSet<Vec<BigRational>> {
    let rows = to_i64_rows(&msys.exponents.to_rows());
    let n = msys.exponents.ncols();
    let free: Vec<usize> = (0..n).filter(|&k| k != msys.chart).collect();
    let square: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| free.iter().map(|&k| r[k]).collect())
        .collect();
    let det = cofactor_det(&square).abs();
    let big_n: i64 = 2 * i64::try_from(det).unwrap();
    let half = big_n / 2;

    let mut found = BTreeSet::new();
    let mut ks = vec![0i64; free.len()];
    loop {
        let ok = rows.iter().zip(&msys.targets).all(|(row, sign)| {
            let s: i64 = free.iter().zip(&ks).map(|(&k, &e)| row[k] * e).sum();
            let want = if sign.is_minus() { half } else { 0 };
            (s - want).rem_euclid(big_n) == 0
        });
        if ok {
            let mut angles = vec![BigRational::zero(); n];
            for (&k, &e) in free.iter().zip(&ks) {
                angles[k] = BigRational::new(e.into(), big_n.into());
            }
            found.insert(angles);
        }
        let mut pos = 0;
        loop {
            if pos == ks.len() {
                return found;
            }
            ks[pos] += 1;
            if ks[pos] < big_n {
                break;
            }
            ks[pos] = 0;
            pos += 1;
        }
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

pub fn vector_of(sys: &ReducedSystem, index: &str) -> ideal_points::DegenerationVector {
    degeneration_vector(sys, &index.parse().unwrap()).unwrap()
}
