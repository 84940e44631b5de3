//! Equations at infinity for a certified degeneration index, their exact
//! solutions over roots of unity, the weighted cyclic quotient, and
//! numerical tracing of the branch leaving each ideal point.
//!
//! For a certified index with primitive weights `d'` the shapes are
//! written as
//!
//! ```text
//! w_k = a_k t^{d'_k}     (symbol 1)
//! z_k = a_k t^{d'_k}     (symbol 0)
//! 1/z_k = a_k t^{d'_k}   (symbol inf)
//! ```
//!
//! and setting `t = 0` leaves the monomial system
//! `prod_k a_k^{R(I)_{ik}} = tau_i`. The solutions are roots of unity, so
//! they are stored exactly as rotation numbers `a_k = exp(2 pi i theta_k)`
//! with rational `theta_k` in `[0, 1)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::degeneration::{degeneration_matrix, DegenerationIndex, DegenerationVector, Symbol};
use crate::error::{Error, Result};
use crate::gluing::ReducedSystem;
use crate::linalg::{IntMatrix, Sign};

/// Exact rotation number in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    pub fn zero() -> Angle {
        Angle(BigRational::zero())
    }

    /// Reduces any rational modulo 1.
    pub fn new(r: BigRational) -> Angle {
        let f = &r - r.floor();
        Angle(f)
    }

    pub fn from_ratio(p: i64, q: i64) -> Angle {
        Angle::new(BigRational::new(p.into(), q.into()))
    }

    /// `0` for `+1`, `1/2` for `-1`.
    pub fn of_sign(s: Sign) -> Angle {
        match s {
            Sign::Plus => Angle::zero(),
            Sign::Minus => Angle::from_ratio(1, 2),
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let theta = self.0.to_f64().unwrap_or(0.0);
        Complex64::from_polar(1.0, 2.0 * PI * theta)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Angle {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Angle, String> {
        let r = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|e| format!("{e}"))?;
                let q: BigInt = q.trim().parse().map_err(|e| format!("{e}"))?;
                if q.is_zero() {
                    return Err("zero denominator".into());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.trim().parse().map_err(|e| format!("{e}"))?),
        };
        Ok(Angle::new(r))
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Angle, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A point `(a_1, ..., a_n)` with every `a_k` a root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitRootVector {
    pub angles: Vec<Angle>,
}

impl UnitRootVector {
    pub fn from_ratios(ratios: &[(i64, i64)]) -> Self {
        Self {
            angles: ratios.iter().map(|&(p, q)| Angle::from_ratio(p, q)).collect(),
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.angles.iter().map(Angle::to_complex).collect()
    }

    /// Checks `Σ_k e_k theta_k ≡ target (mod 1)` exactly for every row.
    pub fn satisfies(&self, msys: &MonomialSystem) -> bool {
        (0..msys.exponents.nrows()).all(|i| {
            let lhs: BigRational = msys
                .exponents
                .row(i)
                .iter()
                .zip(&self.angles)
                .map(|(e, a)| BigRational::from_integer(e.clone()) * a.value())
                .sum();
            Angle::new(lhs) == Angle::of_sign(msys.targets[i])
        })
    }
}

impl fmt::Display for UnitRootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// The system `prod_k a_k^{exponents_ik} = targets_i` in the chart
/// `a_chart = 1`, with the weights `|d'|` of the ambient weighted
/// projective space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialSystem {
    pub index: DegenerationIndex,
    pub vector: DegenerationVector,
    pub exponents: IntMatrix,
    pub targets: Vec<Sign>,
    pub weights: Vec<BigInt>,
    /// 0-based position of the coordinate fixed to 1.
    pub chart: usize,
}

impl MonomialSystem {
    /// The chart column removed: a square system in the remaining unknowns.
    pub fn chart_matrix(&self) -> IntMatrix {
        self.exponents.without_column(self.chart)
    }
}

fn require_certified(index: &DegenerationIndex, vector: &DegenerationVector) -> Result<()> {
    if vector.strict_sign().is_none() {
        return Err(Error::NotCertified {
            index: index.to_string(),
            d: vector.render(),
        });
    }
    Ok(())
}

/// Position of the largest weight, ties to the smallest position.
pub fn default_chart(vector: &DegenerationVector) -> usize {
    let weights = vector.weights();
    let mut best = 0;
    for (k, w) in weights.iter().enumerate() {
        if w > &weights[best] {
            best = k;
        }
    }
    best
}

/// Equations at infinity in the default chart (largest weight).
pub fn equations_at_infinity(
    sys: &ReducedSystem,
    index: &DegenerationIndex,
    vector: &DegenerationVector,
) -> Result<MonomialSystem> {
    equations_at_infinity_in_chart(sys, index, vector, default_chart(vector))
}

/// Equations at infinity with coordinate `chart` (0-based) set to 1.
///
/// An `inf` tetrahedron contributes `(z^{-1} w)^{r''}` to its row, and
/// `z^{-1} w -> -1`, so its target picks up `(-1)^{r''}`.
pub fn equations_at_infinity_in_chart(
    sys: &ReducedSystem,
    index: &DegenerationIndex,
    vector: &DegenerationVector,
    chart: usize,
) -> Result<MonomialSystem> {
    require_certified(index, vector)?;
    let signs = sys.active_signs.as_ref().ok_or(Error::MissingSigns)?;
    if chart >= sys.n() {
        return Err(Error::InvalidParameter(format!(
            "chart {} out of range for {} tetrahedra",
            chart + 1,
            sys.n()
        )));
    }
    if vector.d[chart].is_zero() {
        return Err(Error::DegenerateChart { chart: chart + 1 });
    }
    let exponents = degeneration_matrix(sys, index)?;
    let targets = sys
        .active_rows
        .iter()
        .zip(signs)
        .map(|(row, &sigma)| {
            index
                .symbols()
                .iter()
                .enumerate()
                .filter(|(_, s)| **s == Symbol::Inf)
                .fold(sigma, |acc, (k, _)| acc * Sign::Minus.pow(&BigInt::from(row[2 * k + 1])))
        })
        .collect();
    Ok(MonomialSystem {
        index: index.clone(),
        vector: vector.clone(),
        exponents,
        targets,
        weights: vector.weights(),
        chart,
    })
}

/// All solutions in the chart, sorted; there are exactly `|d_chart|`.
pub fn solve_at_infinity(msys: &MonomialSystem) -> Result<Vec<UnitRootVector>> {
    let square = msys.chart_matrix();
    let k = square.nrows();
    let tri = square.triangularize(&msys.targets)?;
    let upper = &tri.matrix;

    // back substitution over partial assignments of the last unknowns
    let mut partial: Vec<Vec<Angle>> = vec![vec![Angle::zero(); k]];
    for i in (0..k).rev() {
        let c = upper.get(i, i).clone();
        let mut next = Vec::with_capacity(partial.len() * c.abs().to_usize().unwrap_or(1));
        for sol in &partial {
            let known: BigRational = (i + 1..k)
                .map(|j| BigRational::from_integer(upper.get(i, j).clone()) * sol[j].value())
                .sum();
            let rhs = Angle::of_sign(tri.targets[i]).value() - known;
            let mut m = BigInt::zero();
            while m < c.abs() {
                let mut s = sol.clone();
                s[i] = Angle::new((&rhs + BigRational::from_integer(m.clone())) / BigRational::from_integer(c.clone()));
                next.push(s);
                m += 1;
            }
        }
        partial = next;
    }

    let mut out: Vec<UnitRootVector> = partial
        .into_iter()
        .map(|mut angles| {
            angles.insert(msys.chart, Angle::zero());
            UnitRootVector { angles }
        })
        .collect();
    out.sort();
    out.dedup();
    debug_assert_eq!(BigInt::from(out.len()), msys.vector.d[msys.chart].abs());
    Ok(out)
}

/// Orbit representatives (lexicographically least member) of the action
/// `a_k -> zeta^{d'_k} a_k`, `zeta` a primitive `d'_chart`-th root of
/// unity. The orbit count must equal `gcd(d)`.
pub fn quotient_by_weight_action(
    solutions: &[UnitRootVector],
    msys: &MonomialSystem,
) -> Result<Vec<UnitRootVector>> {
    let order = &msys.weights[msys.chart];
    if order.is_zero() {
        return Err(Error::DegenerateChart { chart: msys.chart + 1 });
    }
    let steps = order
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter(format!("chart weight {order} too large")))?;
    let members: BTreeSet<&UnitRootVector> = solutions.iter().collect();
    let inconsistent = |what: String| Error::OrbitCountMismatch {
        index: format!("{} ({what})", msys.index),
        orbits: 0,
        gcd: msys.vector.gcd_value.clone(),
    };

    let mut reps = BTreeSet::new();
    for sol in solutions {
        let mut orbit = BTreeSet::new();
        for k in 0..steps {
            let shifted = UnitRootVector {
                angles: sol
                    .angles
                    .iter()
                    .zip(&msys.weights)
                    .map(|(a, w)| {
                        Angle::new(a.value() + BigRational::new(BigInt::from(k) * w, order.clone()))
                    })
                    .collect(),
            };
            if !members.contains(&shifted) {
                return Err(inconsistent(format!("orbit of {sol} leaves the solution set")));
            }
            orbit.insert(shifted);
        }
        if orbit.len() as u64 != steps {
            return Err(inconsistent(format!("action is not free at {sol}")));
        }
        reps.insert(orbit.into_iter().next().expect("nonempty orbit"));
    }

    let reps: Vec<UnitRootVector> = reps.into_iter().collect();
    if BigInt::from(reps.len()) != msys.vector.gcd_value {
        return Err(Error::OrbitCountMismatch {
            index: msys.index.to_string(),
            orbits: reps.len(),
            gcd: msys.vector.gcd_value.clone(),
        });
    }
    Ok(reps)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    /// Stop once every log-residual is below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    pub t_max: f64,
    /// `|z|` or `|1 - z|` below this counts as a collision with 0 or 1.
    pub collision_tol: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            max_iterations: 50,
            t_max: 1e-2,
            collision_tol: 1e-300,
        }
    }
}

/// A point of the deformation variety near an ideal point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchTrace {
    pub t_value: f64,
    /// Shape parameters `z_k`.
    pub point: Vec<Complex64>,
    /// `max_i |R_i(z) - sigma_i|` over the active equations.
    pub residual: f64,
    /// Max log-residual after each Newton iterate, starting from the seed.
    pub residual_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// The chart minor `d_chart` is nonzero, so the slice is transversal.
    pub jacobian_ok: bool,
}

/// Shape data from a degenerating coordinate `q`: `(z, w, ln z, ln w,
/// d ln z / d ln q, d ln w / d ln q)`.
fn shape(symbol: Symbol, q: Complex64) -> [Complex64; 6] {
    let one = Complex64::new(1.0, 0.0);
    match symbol {
        Symbol::One => {
            let z = one - q;
            [z, q, z.ln(), q.ln(), -q / z, one]
        }
        Symbol::Zero => {
            let w = one - q;
            [q, w, q.ln(), w.ln(), one, -q / w]
        }
        Symbol::Inf => {
            let z = one / q;
            let w = (q - one) / q;
            [z, w, -q.ln(), (q - one).ln() - q.ln(), -one, one / (q - one)]
        }
    }
}

fn wrap_phase(c: Complex64) -> Complex64 {
    let tau = 2.0 * PI;
    Complex64::new(c.re, c.im - tau * (c.im / tau).round())
}

struct Evaluation {
    logs: Vec<Complex64>,
    jacobian: Vec<Vec<Complex64>>,
    points: Vec<(Complex64, Complex64)>,
}

fn evaluate(rows: &[Vec<i64>], signs: &[Sign], symbols: &[Symbol], q: &[Complex64], free: &[usize]) -> Evaluation {
    let data: Vec<[Complex64; 6]> = symbols.iter().zip(q).map(|(&s, &q)| shape(s, q)).collect();
    let log_minus_one = Complex64::new(0.0, PI);
    let mut logs = Vec::with_capacity(rows.len());
    let mut jacobian = Vec::with_capacity(rows.len());
    for (row, sign) in rows.iter().zip(signs) {
        let mut f = if sign.is_minus() { -log_minus_one } else { Complex64::zero() };
        for (k, d) in data.iter().enumerate() {
            f += d[2] * row[2 * k] as f64 + d[3] * row[2 * k + 1] as f64;
        }
        logs.push(wrap_phase(f));
        jacobian.push(
            free.iter()
                .map(|&k| data[k][4] * row[2 * k] as f64 + data[k][5] * row[2 * k + 1] as f64)
                .collect(),
        );
    }
    Evaluation {
        logs,
        jacobian,
        points: data.iter().map(|d| (d[0], d[1])).collect(),
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Gaussian elimination with partial pivoting.
fn solve_linear(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap_or(Ordering::Equal)
        })?;
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                let delta = factor * a[col][k];
                a[row][k] -= delta;
            }
            let delta = factor * b[col];
            b[row] -= delta;
        }
    }
    let mut x = vec![Complex64::zero(); n];
    for row in (0..n).rev() {
        let s: Complex64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    Some(x)
}

/// Follows the branch through the solution `a` at infinity to parameter
/// `t`: seeds the shapes from `a` and `t`, then runs damped Newton on the
/// active gluing equations in log form with the chart coordinate frozen at
/// `t^{d'_chart}`.
pub fn trace_branch(
    sys: &ReducedSystem,
    msys: &MonomialSystem,
    a: &UnitRootVector,
    t: f64,
    options: &TraceOptions,
) -> Result<BranchTrace> {
    if !(t.is_finite() && t > 0.0 && t <= options.t_max) {
        return Err(Error::InvalidParameter(format!(
            "t = {t} is outside (0, {}]",
            options.t_max
        )));
    }
    let n = sys.n();
    if a.angles.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: a.angles.len(),
        });
    }
    let signs = sys.active_signs.as_ref().ok_or(Error::MissingSigns)?;
    let symbols = msys.index.symbols();
    let free: Vec<usize> = (0..n).filter(|&k| k != msys.chart).collect();

    let mut q: Vec<Complex64> = a
        .to_complex()
        .into_iter()
        .zip(&msys.weights)
        .map(|(ak, w)| ak * t.powf(w.to_f64().unwrap_or(f64::INFINITY)))
        .collect();

    let mut eval = evaluate(&sys.active_rows, signs, symbols, &q, &free);
    let mut norm = max_norm(&eval.logs);
    let mut history = vec![norm];
    let mut iterations = 0;
    while norm >= options.tolerance && iterations < options.max_iterations {
        let rhs: Vec<Complex64> = eval.logs.iter().map(|f| -f).collect();
        let Some(step) = solve_linear(eval.jacobian.clone(), rhs) else {
            break;
        };
        let mut damping = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let mut trial = q.clone();
            for (&k, u) in free.iter().zip(&step) {
                trial[k] *= (u * damping).exp();
            }
            let trial_eval = evaluate(&sys.active_rows, signs, symbols, &trial, &free);
            let trial_norm = max_norm(&trial_eval.logs);
            if trial_norm.is_finite() && trial_norm < norm {
                accepted = Some((trial, trial_eval, trial_norm));
                break;
            }
            damping *= 0.5;
        }
        let Some((trial, trial_eval, trial_norm)) = accepted else {
            break;
        };
        q = trial;
        eval = trial_eval;
        norm = trial_norm;
        history.push(norm);
        iterations += 1;
    }

    for (k, (z, w)) in eval.points.iter().enumerate() {
        let bad = |c: &Complex64| !c.is_finite() || c.norm() < options.collision_tol;
        if bad(z) || bad(w) {
            return Err(Error::ShapeCollision { tetrahedron: k + 1, t });
        }
    }
    let residual = eval
        .logs
        .iter()
        .map(|f| (f.exp() - Complex64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max);

    Ok(BranchTrace {
        t_value: t,
        point: eval.points.iter().map(|(z, _)| *z).collect(),
        residual,
        residual_history: history,
        iterations,
        converged: norm < options.tolerance,
        jacobian_ok: !msys.vector.d[msys.chart].is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::degeneration_vector;
    use crate::gluing::{parse_gluing_system, reduce, InputFormat};

    fn fixture(text: &str) -> ReducedSystem {
        reduce(&parse_gluing_system(text, InputFormat::Json).unwrap())
    }

    fn m006() -> ReducedSystem {
        fixture(include_str!("../../../fixtures/m006.json"))
    }

    fn m009() -> ReducedSystem {
        fixture(include_str!("../../../fixtures/m009.json"))
    }

    fn msys(sys: &ReducedSystem, index: &str, chart: Option<usize>) -> MonomialSystem {
        let index: DegenerationIndex = index.parse().unwrap();
        let v = degeneration_vector(sys, &index).unwrap();
        match chart {
            Some(c) => equations_at_infinity_in_chart(sys, &index, &v, c).unwrap(),
            None => equations_at_infinity(sys, &index, &v).unwrap(),
        }
    }

    #[test]
    fn angle_normalization_and_text() {
        assert_eq!(Angle::from_ratio(-1, 2), Angle::from_ratio(1, 2));
        assert_eq!(Angle::from_ratio(5, 4).to_string(), "1/4");
        assert_eq!(Angle::zero().to_string(), "0/1");
        assert_eq!("3/2".parse::<Angle>().unwrap(), Angle::from_ratio(1, 2));
        assert_eq!("0".parse::<Angle>().unwrap(), Angle::zero());
        assert!("1/0".parse::<Angle>().is_err());
    }

    #[test]
    fn m009_equations_in_third_chart() {
        let ms = msys(&m009(), "inf,0,0", Some(2));
        assert_eq!(ms.exponents, IntMatrix::from_i64(&[&[-2, 2, 2], &[1, -2, 0]]));
        assert_eq!(ms.chart_matrix(), IntMatrix::from_i64(&[&[-2, 2], &[1, -2]]));
        assert_eq!(ms.targets, vec![Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn default_chart_is_largest_weight() {
        assert_eq!(msys(&m009(), "inf,0,0", None).chart, 0);
        assert_eq!(msys(&m006(), "1,1,inf", None).chart, 1);
        assert_eq!(msys(&m009(), "0,0,inf", None).chart, 2);
    }

    #[test]
    fn targets_without_inf_are_the_signs() {
        let ms = msys(&m006(), "0,0,inf", None);
        // only column 3 is inf; r''_{i,3} = 0, -1
        assert_eq!(ms.targets, vec![Sign::Plus, Sign::Minus]);
        let sys = m006();
        let index: DegenerationIndex = "1,1,1".parse().unwrap();
        let fake = DegenerationVector::from_i64(&[1, 1, 1]);
        let ms = equations_at_infinity_in_chart(&sys, &index, &fake, 0).unwrap();
        assert!(ms.targets.iter().all(|s| *s == Sign::Plus));
    }

    #[test]
    fn missing_signs_degrade() {
        let mut sys = m009();
        sys.active_signs = None;
        let index: DegenerationIndex = "inf,0,0".parse().unwrap();
        let v = degeneration_vector(&sys, &index).unwrap();
        assert!(matches!(equations_at_infinity(&sys, &index, &v), Err(Error::MissingSigns)));
    }

    #[test]
    fn uncertified_index_is_refused() {
        let sys = m009();
        let index: DegenerationIndex = "0,1,1".parse().unwrap();
        let v = degeneration_vector(&sys, &index).unwrap();
        assert!(matches!(equations_at_infinity(&sys, &index, &v), Err(Error::NotCertified { .. })));
    }

    #[test]
    fn m009_solutions_at_infinity() {
        let ms = msys(&m009(), "inf,0,0", Some(2));
        let sols = solve_at_infinity(&ms).unwrap();
        assert_eq!(
            sols,
            vec![
                UnitRootVector::from_ratios(&[(1, 2), (0, 1), (0, 1)]),
                UnitRootVector::from_ratios(&[(1, 2), (1, 2), (0, 1)]),
            ]
        );
        assert!(sols.iter().all(|s| s.satisfies(&ms)));
        let reps = quotient_by_weight_action(&sols, &ms).unwrap();
        assert_eq!(reps.len(), 2);
    }

    #[test]
    fn single_equation_system() {
        // a_1 = 1 in the chart a_2 = 1
        let ms = MonomialSystem {
            index: "0,0".parse().unwrap(),
            vector: DegenerationVector::from_i64(&[1, 1]),
            exponents: IntMatrix::from_i64(&[&[1, -1]]),
            targets: vec![Sign::Plus],
            weights: vec![BigInt::from(1), BigInt::from(1)],
            chart: 1,
        };
        let sols = solve_at_infinity(&ms).unwrap();
        assert_eq!(sols, vec![UnitRootVector::from_ratios(&[(0, 1), (0, 1)])]);
        assert_eq!(quotient_by_weight_action(&sols, &ms).unwrap(), sols);
    }

    #[test]
    fn m006_count_and_quotient() {
        let ms = msys(&m006(), "1,1,inf", Some(1));
        let sols = solve_at_infinity(&ms).unwrap();
        assert_eq!(sols.len(), 3);
        let reps = quotient_by_weight_action(&sols, &ms).unwrap();
        assert_eq!(reps.len(), 1);
    }

    #[test]
    fn quotient_detects_inconsistency() {
        let ms = msys(&m009(), "inf,0,0", Some(0));
        let mut sols = solve_at_infinity(&ms).unwrap();
        sols.pop();
        assert!(quotient_by_weight_action(&sols, &ms).is_err());
    }

    #[test]
    fn trace_rejects_bad_t() {
        let sys = m009();
        let ms = msys(&sys, "inf,0,0", Some(2));
        let a = UnitRootVector::from_ratios(&[(1, 2), (0, 1), (0, 1)]);
        for t in [0.0, -1e-3, 0.5, f64::NAN] {
            assert!(matches!(
                trace_branch(&sys, &ms, &a, t, &TraceOptions::default()),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn trace_m009_branch() {
        let sys = m009();
        let ms = msys(&sys, "inf,0,0", Some(2));
        let a = UnitRootVector::from_ratios(&[(1, 2), (0, 1), (0, 1)]);
        let t = 1e-3;
        let tr = trace_branch(&sys, &ms, &a, t, &TraceOptions::default()).unwrap();
        assert!(tr.converged, "{tr:?}");
        assert!(tr.residual < 1e-9);
        assert!(tr.jacobian_ok);
        // leading behavior z1 ~ -1/t^2, z2 ~ t, z3 = t
        assert!((tr.point[0] * t * t + 1.0).norm() < 0.05);
        assert!((tr.point[1] / t - 1.0).norm() < 0.05);
        assert!((tr.point[2] / t - 1.0).norm() < 1e-12);
    }
}
