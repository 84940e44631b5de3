//! Exact integer linear algebra.
//!
//! Determinants and rank use fraction-free (Bareiss) elimination over
//! `BigInt`; triangularization uses Euclidean row reduction so that every
//! step is an integer combination of rows, which keeps the semantics of an
//! attached monomial system `prod a_j^{m_ij} = target_i` intact.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A sign `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// `self^e`; only the parity of `e` matters.
    pub fn pow(self, e: &BigInt) -> Sign {
        if e.is_odd() {
            self
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i64())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// Dense rectangular matrix of arbitrary-precision integers, row major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed to describe `k x c`
    /// matrices with `k = 0`.
    pub fn from_rows<T>(rows: &[Vec<T>], cols: usize) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Convenience constructor for literal matrices; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned, cols).expect("rectangular literal")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    /// Copy with column `j` removed.
    pub fn without_column(&self, j: usize) -> IntMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        self.select_columns(&keep)
    }

    /// Copy keeping only `columns`, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(self.rows * columns.len());
        for i in 0..self.rows {
            for &c in columns {
                data.push(self.get(i, c).clone());
            }
        }
        IntMatrix {
            rows: self.rows,
            cols: columns.len(),
            data,
        }
    }

    /// Copy keeping only `rows`, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        IntMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let delta = q * self.get(src, j);
            self.data[dst * self.cols + j] -= delta;
        }
    }

    /// Fraction-free echelon form. Returns the reduced matrix and the pivot
    /// columns; rows past `pivots.len()` are zero.
    fn bareiss_echelon(&self) -> (IntMatrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let pivot = a.get(r, c).clone();
            for i in r + 1..a.rows {
                let lead = a.get(i, c).clone();
                for j in c + 1..a.cols {
                    let num = &pivot * a.get(i, j) - &lead * a.get(r, j);
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division must be exact");
                    a.set(i, j, num / &prev);
                }
                a.set(i, c, BigInt::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        negate = !negate;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                let lead = a.get(i, k).clone();
                for j in k + 1..n {
                    let num = &pivot * a.get(i, j) - &lead * a.get(k, j);
                    a.set(i, j, num / &prev);
                }
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Integer rows spanning the same rational row space, one per unit of
    /// rank.
    pub fn row_basis(&self) -> IntMatrix {
        let (echelon, pivots) = self.bareiss_echelon();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        echelon.select_rows(&keep)
    }

    /// Signed maximal minors of a `k x (k+1)` matrix: component `j`
    /// (0-based) is `(-1)^j det(M without column j)`. The result spans the
    /// kernel whenever the matrix has full row rank, and is zero otherwise.
    pub fn maximal_minor_vector(&self) -> Result<Vec<BigInt>> {
        if self.cols != self.rows + 1 {
            return Err(Error::Shape(format!(
                "maximal minors need a k x (k+1) matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        (0..self.cols)
            .map(|j| {
                let minor = self.without_column(j).det()?;
                Ok(if j % 2 == 0 { minor } else { -minor })
            })
            .collect()
    }

    /// Reduces to upper-triangular form by integer row operations,
    /// carrying a `±1` target per row as if each row were the monomial
    /// equation `prod a_j^{row_j} = target`.
    ///
    /// The first `min(rows, cols)` columns are triangularized; for the
    /// `k x k` and `k x (k+1)` shapes used here that is the leading square
    /// block. A column with no nonzero entry at or below the diagonal is a
    /// zero pivot and an error.
    pub fn triangularize(&self, targets: &[Sign]) -> Result<SignedTriangularSystem> {
        if targets.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                actual: targets.len(),
            });
        }
        if self.cols < self.rows {
            return Err(Error::Shape(format!(
                "triangularize needs at least as many columns as rows, got {}x{}",
                self.rows, self.cols
            )));
        }
        let mut m = self.clone();
        let mut targets = targets.to_vec();
        for j in 0..m.rows {
            loop {
                // smallest nonzero |entry| at or below the diagonal
                let pivot_row = (j..m.rows)
                    .filter(|&i| !m.get(i, j).is_zero())
                    .min_by(|&a, &b| m.get(a, j).abs().cmp(&m.get(b, j).abs()));
                let Some(p) = pivot_row else {
                    return Err(Error::ZeroPivot { column: j });
                };
                m.swap_rows(j, p);
                targets.swap(j, p);

                let pivot = m.get(j, j).clone();
                let mut cleared = true;
                for i in j + 1..m.rows {
                    if m.get(i, j).is_zero() {
                        continue;
                    }
                    let q = m.get(i, j).div_floor(&pivot);
                    m.sub_row_multiple(i, j, &q);
                    // a^{row_i - q row_j} = target_i * target_j^{-q}
                    targets[i] = targets[i] * targets[j].pow(&q);
                    if !m.get(i, j).is_zero() {
                        cleared = false;
                    }
                }
                if cleared {
                    break;
                }
            }
        }
        Ok(SignedTriangularSystem { matrix: m, targets })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Upper-triangular integer matrix with one `±1` target per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedTriangularSystem {
    pub matrix: IntMatrix,
    pub targets: Vec<Sign>,
}

impl SignedTriangularSystem {
    /// Product of the diagonal entries.
    pub fn diagonal_product(&self) -> BigInt {
        (0..self.matrix.nrows())
            .map(|i| self.matrix.get(i, i).clone())
            .product()
    }
}

/// gcd of the absolute values; zero iff every entry is zero.
pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[-1, 1]]).det().unwrap(), BigInt::from(1));
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::from(1));
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), BigInt::from(1));
        // needs a row swap
        assert_eq!(
            IntMatrix::from_i64(&[&[0, 2, 1], &[1, 0, 0], &[0, 0, 3]]).det().unwrap(),
            BigInt::from(-6)
        );
    }

    #[test]
    fn det_rejects_non_square() {
        assert!(matches!(
            IntMatrix::from_i64(&[&[1, 2, 3]]).det(),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn det_handles_growth_past_i64() {
        let big_entry = BigInt::from(i64::MAX) * BigInt::from(4);
        let m = IntMatrix::from_rows(
            &[vec![big_entry.clone(), BigInt::from(0)], vec![BigInt::from(0), big_entry.clone()]],
            2,
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), &big_entry * &big_entry);
    }

    #[test]
    fn minor_vectors_from_worked_examples() {
        let m = IntMatrix::from_i64(&[&[-1, 0, 1], &[2, -1, 1]]);
        assert_eq!(m.maximal_minor_vector().unwrap(), big(&[1, 3, 1]));
        let m = IntMatrix::from_i64(&[&[2, 2, -2], &[0, -2, 1]]);
        assert_eq!(m.maximal_minor_vector().unwrap(), big(&[-2, -2, -4]));
        let m = IntMatrix::from_i64(&[&[1, -1]]);
        assert_eq!(m.maximal_minor_vector().unwrap(), big(&[-1, -1]));
    }

    #[test]
    fn minor_vector_of_empty_matrix_is_one() {
        let m = IntMatrix::zeros(0, 1);
        assert_eq!(m.maximal_minor_vector().unwrap(), big(&[1]));
    }

    #[test]
    fn minor_vector_rejects_wrong_shape() {
        assert!(IntMatrix::identity(2).maximal_minor_vector().is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntMatrix::from_i64(&[&[1, -1, -1], &[0, 0, 0]]).rank(), 1);
        assert_eq!(IntMatrix::zeros(2, 3).rank(), 0);
        assert_eq!(IntMatrix::from_i64(&[&[-1, 0, 1], &[2, -1, 1]]).rank(), 2);
        assert_eq!(IntMatrix::from_i64(&[&[0, 0, 1], &[0, 0, 2], &[1, 1, 0]]).rank(), 2);
    }

    #[test]
    fn row_basis_keeps_row_space() {
        let m = IntMatrix::from_i64(&[&[1, -1, -1], &[0, 0, 0]]);
        let b = m.row_basis();
        assert_eq!(b.shape(), (1, 3));
        assert_eq!(b.row(0), big(&[1, -1, -1]).as_slice());
    }

    #[test]
    fn triangularize_preserves_abs_det() {
        let m = IntMatrix::from_i64(&[&[-2, 2], &[1, -2]]);
        let t = m.triangularize(&[Sign::Plus, Sign::Plus]).unwrap();
        assert!(t.matrix.is_upper_triangular());
        assert_eq!(t.diagonal_product().abs(), BigInt::from(2));
    }

    #[test]
    fn triangularize_fixed_point() {
        let m = IntMatrix::from_i64(&[&[3, 1], &[0, 2]]);
        let t = m.triangularize(&[Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(t.matrix, m);
        assert_eq!(t.targets, vec![Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn triangularize_tracks_signs() {
        // a1^-2 a2^2 = 1, a1 a2^-2 = -1  ->  a1 a2^-2 = -1, a2^-2 = 1
        let m = IntMatrix::from_i64(&[&[-2, 2], &[1, -2]]);
        let t = m.triangularize(&[Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(t.matrix, IntMatrix::from_i64(&[&[1, -2], &[0, -2]]));
        assert_eq!(t.targets, vec![Sign::Minus, Sign::Plus]);
    }

    #[test]
    fn triangularize_zero_pivot() {
        let m = IntMatrix::from_i64(&[&[1, 2, 0], &[2, 4, 1]]);
        assert!(matches!(
            m.triangularize(&[Sign::Plus, Sign::Plus]),
            Err(Error::ZeroPivot { column: 1 })
        ));
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Minus.pow(&BigInt::from(-3)), Sign::Minus);
        assert_eq!(Sign::Minus.pow(&BigInt::from(4)), Sign::Plus);
        assert_eq!(Sign::from_i64(2), None);
    }

    #[test]
    fn gcd_of_vector() {
        assert_eq!(gcd_all(&big(&[4, -2, 2])), BigInt::from(2));
        assert_eq!(gcd_all(&big(&[0, 0])), BigInt::from(0));
    }
}
