//! Knot records, Seifert-matrix Alexander polynomials and the knot catalog.

mod catalog;
mod matrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intpoly::IntPoly;
use crate::rational::Rational;
use crate::sympoly::{PolyError, SymPoly};

pub use catalog::{load_catalog, Catalog, CatalogError};
pub use matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error("Seifert matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("det(V - tV^T) vanishes identically")]
    DegenerateSeifert,
    #[error("companion matrix needs a monic integer polynomial in nonnegative whole powers")]
    NotMonic,
    #[error("Alexander polynomial {stored} does not match {derived} computed from the Seifert matrix")]
    SeifertMismatch { stored: String, derived: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A named knot with its normalized Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub alexander: SymPoly,
    pub seifert: Option<IntegerMatrix>,
    /// Casson-Walker invariants of the k-fold branched cyclic covers, keyed
    /// by k. These come from the literature and are never computed here.
    pub branched_cover_lambda: BTreeMap<u32, Rational>,
}

impl KnotRecord {
    /// Normalizes `alexander` and builds a record without a Seifert matrix.
    pub fn new(name: impl Into<String>, alexander: &SymPoly) -> Result<Self, KnotError> {
        Ok(KnotRecord {
            name: name.into(),
            alexander: alexander.normalize()?,
            seifert: None,
            branched_cover_lambda: BTreeMap::new(),
        })
    }

    /// Builds a record whose Alexander polynomial is derived from `seifert`.
    pub fn from_seifert(name: impl Into<String>, seifert: IntegerMatrix) -> Result<Self, KnotError> {
        Ok(KnotRecord {
            name: name.into(),
            alexander: alexander_from_seifert(&seifert)?,
            seifert: Some(seifert),
            branched_cover_lambda: BTreeMap::new(),
        })
    }

    pub fn branched_lambda(&self, k: u32) -> Option<&Rational> {
        self.branched_cover_lambda.get(&k)
    }
}

fn require_square(v: &IntegerMatrix) -> Result<(), KnotError> {
    if v.is_square() {
        Ok(())
    } else {
        Err(KnotError::NotSquare { rows: v.rows(), cols: v.cols() })
    }
}

/// The normalized `det(V - t V^T)`.
pub fn alexander_from_seifert(v: &IntegerMatrix) -> Result<SymPoly, KnotError> {
    require_square(v)?;
    let vt = v.transpose();
    let minus_vt = IntegerMatrix::from_rows(
        vt.row_vecs()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect(),
    )?;
    let det = v.pencil_determinant(&minus_vt);
    if det.is_zero() {
        return Err(KnotError::DegenerateSeifert);
    }
    Ok(SymPoly::from_intpoly(&det).normalize()?)
}

/// `det(V - V^T)`; equal to `+-1` for the Seifert matrix of a knot.
pub fn seifert_form_determinant(v: &IntegerMatrix) -> Result<BigInt, KnotError> {
    require_square(v)?;
    let rows = v
        .row_vecs()
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.into_iter()
                .enumerate()
                .map(|(j, x)| x - v.get(j, i))
                .collect()
        })
        .collect();
    Ok(IntegerMatrix::from_rows(rows)?.determinant())
}

/// Coefficients `b_0, ..., b_{s-1}` of a monic `b_0 + ... + b_{s-1} t^{s-1} + t^s`.
fn monic_coefficients(p: &SymPoly) -> Result<Vec<BigInt>, KnotError> {
    if p.is_zero() || p.has_half_powers() || p.min_exponent().is_some_and(|e| e < 0) {
        return Err(KnotError::NotMonic);
    }
    if p.terms().any(|(_, c)| !c.is_integer()) {
        return Err(KnotError::NotMonic);
    }
    let top = p.max_exponent().unwrap();
    if !p.coeff(top).is_one() {
        return Err(KnotError::NotMonic);
    }
    Ok((0..top / 2).map(|i| p.coeff(2 * i).to_integer()).collect())
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal and
/// `-b_0, ..., -b_{s-1}` down the last column.
pub fn companion_matrix(p: &SymPoly) -> Result<IntegerMatrix, KnotError> {
    let b = monic_coefficients(p)?;
    let s = b.len();
    let rows = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    if j == s - 1 {
                        -&b[i]
                    } else if i == j + 1 {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    IntegerMatrix::from_rows(rows)
}

/// `det(A - tI)` for the companion matrix `A` of `p`; this is
/// `(-1)^s p(t)` with `s` the degree.
pub fn companion_alexander(p: &SymPoly) -> Result<SymPoly, KnotError> {
    let a = companion_matrix(p)?;
    let n = a.rows();
    let minus_identity = IntegerMatrix::from_rows(
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { -BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect(),
    )?;
    let det: IntPoly = a.pencil_determinant(&minus_identity);
    Ok(SymPoly::from_intpoly(&det))
}

/// Whether a Seifert matrix has `det(V - V^T) = +-1`.
pub fn is_unimodular_seifert(v: &IntegerMatrix) -> Result<bool, KnotError> {
    Ok(seifert_form_determinant(v)?.abs().is_one())
}
