use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::KnotError;
use crate::intpoly::IntPoly;

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, KnotError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(KnotError::RaggedMatrix);
        }
        Ok(IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, KnotError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// The 0 x 0 matrix.
    pub fn empty() -> Self {
        IntegerMatrix { rows: 0, cols: 0, entries: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntegerMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Determinant of `self + t * other` as a polynomial in `t`.
    pub(crate) fn pencil_determinant(&self, other: &IntegerMatrix) -> IntPoly {
        debug_assert!(self.is_square() && self.rows == other.rows && other.is_square());
        let n = self.rows;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| IntPoly::new(vec![self.get(i, j).clone(), other.get(i, j).clone()]))
                    .collect()
            })
            .collect();
        bareiss_determinant(entries)
    }

    /// Integer determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        self.pencil_determinant(&IntegerMatrix::zeros(self.rows)).coeff(0)
    }

    fn zeros(n: usize) -> Self {
        IntegerMatrix { rows: n, cols: n, entries: vec![BigInt::zero(); n * n] }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Fraction-free Gaussian elimination over `Z[t]`. Every division is exact.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    let mut sign_flip = false;
    let mut prev = IntPoly::constant(BigInt::one());
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return IntPoly::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss quotients are exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { IntPoly::constant(BigInt::one()) } else { m[n - 1][n - 1].clone() };
    if sign_flip {
        -&det
    } else {
        det
    }
}
